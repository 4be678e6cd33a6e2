#include "looij/polytope.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace looij {

namespace {

std::string fan_key(const Fan& f) {
    std::string s;
    for (auto& r : f.rays) s += std::to_string(r.self_int) + "/" + std::to_string(r.blowups) + ";";
    return s;
}

// x -> <q, x> for integral q, cached per fan
const TropicalFunction& theta_fn(const Fan& f, const TropPoint& q) {
    static std::mutex mu;
    static std::map<std::pair<std::string, TropPoint>, TropicalFunction> cache;
    auto key = std::make_pair(fan_key(f), q);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto fn = trop_theta(f, q).fn;
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(key, std::move(fn)).first->second;
}

Z denominator_lcm(const TropPoint& p) {
    Z l;
    mpz_lcm(l.get_mpz_t(), p.a.get_den_mpz_t(), p.b.get_den_mpz_t());
    return l;
}

// <p, .> for a rational point, by homogeneity
TropicalFunction scaled_theta(const Fan& f, const TropPoint& p0) {
    if (p0.is_zero()) return sample_function(f, {}, [](const TropPoint&) { return Q(0); });
    TropPoint p = normalize(f, p0);
    Z c = denominator_lcm(p);
    TropicalFunction t = theta_fn(f, p.scaled(Q(c)));
    for (auto& v : t.values) v /= Q(c);
    return t;
}

std::vector<TropPoint> rays_of(const TropicalFunction& t) {
    std::vector<TropPoint> out;
    for (int k = 0; k < t.ref.fan.n(); ++k) out.push_back(t.ref.unmap({k, 1, 0}));
    return out;
}

// rays where x -> <x, v> may bend: theta of v on the mirror, carried back
std::vector<TropPoint> first_slot_rays(const Fan& f, const TropPoint& v) {
    Fan m = mirror(f);
    std::vector<TropPoint> out;
    for (auto& r : rays_of(theta_fn(m, mirror_point(f, v)))) out.push_back(mirror_point(m, r));
    return out;
}

std::vector<TropPoint> sorted_unique(const Fan& f, const std::vector<TropPoint>& pts) {
    std::set<TropPoint> s;
    for (auto& p : pts) s.insert(p.is_zero() ? TropPoint{0, 0, 0} : normalize(f, p));
    return {s.begin(), s.end()};
}

// facets with primitive integral normals, merged per normal
std::vector<Facet> normalize_facets(const Fan& f, const std::vector<Facet>& in) {
    std::map<TropPoint, Q> best;
    for (auto& F : in) {
        if (F.v.is_zero()) {
            if (sgn(F.a) > 0) throw DomainError("empty polytope: facet 0 >= a with a > 0");
            continue;
        }
        TropPoint v = normalize(f, F.v);
        TropPoint p = v.primitive();
        Q c = sgn(p.a) != 0 ? v.a / p.a : v.b / p.b;
        Q a = F.a / c;
        auto it = best.find(p);
        if (it == best.end() || a > it->second) best[p] = a;
    }
    std::vector<Facet> out;
    for (auto& [v, a] : best) out.push_back({v, a});
    return out;
}

struct Piece {
    int k = 0;
    std::vector<std::pair<Q, Q>> verts;
    bool unbounded = false;
    std::vector<std::pair<Q, Q>> rec;
    std::vector<std::array<Q, 3>> cons;  // c0*alpha + c1*beta >= a
};

struct Charts {
    Refinement R;
    std::vector<Piece> pieces;
};

bool feasible(const std::vector<std::array<Q, 3>>& cons, const Q& x, const Q& y) {
    if (sgn(x) < 0 || sgn(y) < 0) return false;
    for (auto& c : cons)
        if (c[0] * x + c[1] * y < c[2]) return false;
    return true;
}

// The facets restricted to the sectors of a refinement on which every
// x -> <x, v> is linear: each piece is a classical polygon in sector coordinates.
Charts charts(const Fan& f, const std::vector<Facet>& facets) {
    std::vector<TropPoint> dirs;
    for (auto& F : facets)
        for (auto& r : first_slot_rays(f, F.v)) dirs.push_back(r);
    Charts C{refine_all(f, dirs), {}};
    const Refinement& R = C.R;
    int n = R.fan.n();
    std::vector<TropPoint> w(n);
    for (int k = 0; k < n; ++k) w[k] = R.unmap({k, 1, 0});
    std::vector<std::vector<Q>> val(n, std::vector<Q>(facets.size()));
    for (int k = 0; k < n; ++k)
        for (size_t i = 0; i < facets.size(); ++i) val[k][i] = pair(f, w[k], facets[i].v);
    for (int k = 0; k < n; ++k) {
        Piece P;
        P.k = k;
        int k1 = (k + 1) % n;
        TropPoint mid = R.unmap({k, 1, 1});
        for (size_t i = 0; i < facets.size(); ++i) {
            if (pair(f, mid, facets[i].v) != val[k][i] + val[k1][i])
                throw std::logic_error("pairing is not linear on a refined sector");
            P.cons.push_back({val[k][i], val[k1][i], facets[i].a});
        }
        std::vector<std::array<Q, 3>> lines = P.cons;
        lines.push_back({1, 0, 0});
        lines.push_back({0, 1, 0});
        std::set<std::pair<Q, Q>> vs;
        for (size_t p = 0; p < lines.size(); ++p)
            for (size_t q = p + 1; q < lines.size(); ++q) {
                Q det = lines[p][0] * lines[q][1] - lines[p][1] * lines[q][0];
                if (sgn(det) == 0) continue;
                Q x = (lines[p][2] * lines[q][1] - lines[p][1] * lines[q][2]) / det;
                Q y = (lines[p][0] * lines[q][2] - lines[p][2] * lines[q][0]) / det;
                if (feasible(P.cons, x, y)) vs.insert({x, y});
            }
        P.verts.assign(vs.begin(), vs.end());
        if (!P.verts.empty()) {
            std::vector<std::pair<Q, Q>> cand{{1, 0}, {0, 1}};
            for (auto& c : P.cons) {
                cand.push_back({c[1], -c[0]});
                cand.push_back({-c[1], c[0]});
            }
            for (auto& d : cand) {
                if (sgn(d.first) < 0 || sgn(d.second) < 0 || (sgn(d.first) == 0 && sgn(d.second) == 0)) continue;
                bool ok = true;
                for (auto& c : P.cons)
                    if (sgn(Q(c[0] * d.first + c[1] * d.second)) < 0) ok = false;
                if (ok) {
                    P.unbounded = true;
                    P.rec.push_back(d);
                }
            }
        }
        C.pieces.push_back(std::move(P));
    }
    return C;
}

std::vector<TropPoint> chart_vertices(const Charts& C) {
    std::set<TropPoint> out;
    for (auto& P : C.pieces)
        for (auto& [x, y] : P.verts) out.insert(C.R.unmap({P.k, x, y}));
    return {out.begin(), out.end()};
}

bool tight(const Fan& f, const TropPoint& x, const Facet& F) { return pair(f, x, F.v) == F.a; }

bool in_hull_of(const Fan& f, const std::vector<TropPoint>& pts, const TropPoint& x) {
    auto phi = support_function(f, pts);
    for (int k = 0; k < phi.ref.fan.n(); ++k)
        if (pair(f, x, phi.ref.unmap({k, 1, 0})) < phi.values[k]) return false;
    return true;
}

// drops points lying in the hull of the others
std::vector<TropPoint> reduce(const Fan& f, std::vector<TropPoint> pts) {
    for (size_t i = 0; i < pts.size() && pts.size() > 1;) {
        std::vector<TropPoint> rest = pts;
        rest.erase(rest.begin() + long(i));
        if (in_hull_of(f, rest, pts[i]))
            pts = rest;
        else
            ++i;
    }
    return pts;
}

std::vector<std::vector<TropPoint>> tuples(const std::vector<StrongPolytope>& polys) {
    std::vector<std::vector<TropPoint>> out{{}};
    for (auto& P : polys) {
        std::set<TropPoint> vs(P.vertices.begin(), P.vertices.end());
        vs.insert({0, 0, 0});
        std::vector<std::vector<TropPoint>> next;
        for (auto& t : out)
            for (auto& v : vs) {
                auto u = t;
                if (!v.is_zero()) u.push_back(v);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

// position of a direction on the circle: sector, then slope inside it
bool circle_less(const TropPoint& x, const TropPoint& y) {
    if (x.sector != y.sector) return x.sector < y.sector;
    return x.b * (y.a + y.b) < y.b * (x.a + x.b);
}

Q l1(const Vec2& X) { return abs(X.x) + abs(X.y); }

// rays between consecutive vertex directions, one per gap
std::vector<TropPoint> separating_rays(const Fan& f, const std::vector<StrongPolytope>& polys) {
    std::set<TropPoint> ds;
    for (auto& P : polys)
        for (auto& v : P.vertices)
            if (!v.is_zero()) ds.insert(normalize(f, v).primitive());
    std::vector<TropPoint> d(ds.begin(), ds.end());
    std::sort(d.begin(), d.end(), circle_less);
    std::vector<TropPoint> out;
    if (d.empty()) return out;
    Developer dev(f);
    if (d.size() == 1) {
        for (int i = 0; i < f.n(); ++i) {
            TropPoint r = ray_point(f, i);
            if (r != d[0]) return {r};
        }
    }
    for (size_t i = 0; i < d.size(); ++i) {
        const TropPoint &x = d[i], &y = d[(i + 1) % d.size()];
        Lifted A = dev.lift(x, 0), B = dev.lift(y, 0);
        for (long t = 1; cum_cmp(dev, B, A) <= 0; ++t) B = dev.lift(y, t);
        if (within_pi(dev, A, B) && swedge(A.X, B.X) > 0) {
            Vec2 M = A.X * (1 / l1(A.X)) + B.X * (1 / l1(B.X));
            out.push_back(dev.point({dev.sector_from(M, A.j), M}).primitive());
        } else {
            // a wide gap always contains a ray of the fan
            for (long j = A.j + 1; j <= B.j; ++j) {
                Lifted R{j, dev.r(j)};
                if (cum_cmp(dev, A, R) < 0 && cum_cmp(dev, R, B) < 0) {
                    out.push_back(ray_point(f, int(f.mod(j))));
                    break;
                }
            }
        }
    }
    return out;
}

// first lift of p counterclockwise after the lifted ray R
Lifted lift_after(const Developer& dev, const Lifted& R, const TropPoint& p) {
    long t = (R.j - dev.lift(p, 0).j) / dev.n() - 2;
    Lifted L = dev.lift(p, t);
    while (cum_cmp(dev, L, R) <= 0) L = dev.lift(p, ++t);
    return L;
}

StrongPolytope canonical(const Fan& f, const std::vector<TropPoint>& candidates) {
    return strong_hull(f, candidates);
}

}  // namespace

TropicalFunction support_function(const Fan& f, const std::vector<TropPoint>& pts) {
    if (pts.empty()) throw DomainError("support function of an empty set");
    std::vector<TropicalFunction> fs;
    for (auto& p : pts) fs.push_back(scaled_theta(f, p));
    return min_of(f, fs);
}

bool contains(const Fan& f, const StrongPolytope& P, const TropPoint& x) {
    for (auto& F : P.facets)
        if (pair(f, x, F.v) < F.a) return false;
    return true;
}

Q support(const Fan& f, const StrongPolytope& P, const TropPoint& v) {
    if (!P.bounded) throw DomainError("support of an unbounded polytope");
    Q m = pair(f, P.vertices.front(), v);
    for (auto& q : P.vertices) m = std::min(m, pair(f, q, v));
    return m;
}

Q implied_support(const Fan& f, const StrongPolytope& P, const TropPoint& v0) {
    if (v0.is_zero()) return 0;
    if (P.facets.empty()) throw DomainError("no facets to interpolate");
    TropPoint v = normalize(f, v0);
    std::vector<TropPoint> ns;
    for (auto& F : P.facets) ns.push_back(F.v);
    Refinement R = refine_all(f, ns);
    int n = R.fan.n();
    std::map<int, const Facet*> at;  // refined index -> facet on that ray
    for (auto& F : P.facets) at[R.map(F.v).sector] = &F;
    TropPoint vr = R.map(v);
    if (sgn(vr.b) == 0 && at.count(vr.sector)) return vr.a * at[vr.sector]->a / R.map(at[vr.sector]->v).a;
    // nearest facet rays clockwise (lo) and counterclockwise (hi) of v
    long lo = vr.sector, hi = vr.sector + 1;
    while (!at.count(int(((lo % n) + n) % n))) --lo;
    while (!at.count(int(hi % n))) ++hi;
    Developer dev(R.fan);
    Vec2 A = dev.r(lo), B = dev.r(hi), X = dev.at(vr.sector, vr.a, vr.b);
    if (hi - lo >= n || swedge(A, B) <= 0) throw DomainError("facet normals leave a gap of angle at least pi");
    const Facet *Fa = at[int(((lo % n) + n) % n)], *Fb = at[int(hi % n)];
    Q ca = R.map(Fa->v).a, cb = R.map(Fb->v).a;  // normal = c * ray generator
    // X = s A + t B
    Q s = wedge(X, B) / wedge(A, B), t = wedge(A, X) / wedge(A, B);
    return s / ca * Fa->a + t / cb * Fb->a;
}

bool same_polytope(const Fan& f, const StrongPolytope& A, const StrongPolytope& B) {
    if (A.bounded != B.bounded) return false;
    for (auto& v : A.vertices)
        if (!contains(f, B, v)) return false;
    for (auto& v : B.vertices)
        if (!contains(f, A, v)) return false;
    if (!A.bounded) {
        std::set<TropPoint> ra(A.recession.begin(), A.recession.end()), rb(B.recession.begin(), B.recession.end());
        return ra == rb;
    }
    return true;
}

StrongPolytope strong_hull(const Fan& f, const std::vector<TropPoint>& pts0) {
    require_positive(f);
    if (pts0.empty()) throw DomainError("strong hull of an empty set");
    auto pts = sorted_unique(f, pts0);
    StrongPolytope P;
    auto phi = support_function(f, pts);
    // a ray where the support function does not bend carries a facet implied
    // by its neighbours; base rays stay so every gap is a cone below pi
    auto bends = phi.bends();
    std::vector<bool> base(phi.ref.fan.n(), false);
    for (int s : phi.ref.start) base[s] = true;
    for (int k = 0; k < phi.ref.fan.n(); ++k)
        if (base[k] || sgn(bends[k]) != 0) P.facets.push_back({phi.ref.unmap({k, 1, 0}), phi.values[k]});
    P.vertices = reduce(f, pts);
    P.bounded = true;
    P.contains_origin = std::all_of(P.facets.begin(), P.facets.end(), [](const Facet& F) { return sgn(F.a) <= 0; });
    return P;
}

StrongPolytope from_facets(const Fan& f, const std::vector<Facet>& facets0) {
    require_positive(f);
    auto facets = normalize_facets(f, facets0);
    if (facets.empty()) {
        StrongPolytope P;
        P.bounded = false;
        P.contains_origin = true;
        for (int i = 0; i < f.n(); ++i) P.recession.push_back(ray_point(f, i));
        return P;
    }
    Charts C = charts(f, facets);
    auto cands = chart_vertices(C);
    if (cands.empty()) throw DomainError("empty polytope");
    bool bounded = std::none_of(C.pieces.begin(), C.pieces.end(), [](const Piece& p) { return p.unbounded; });
    if (bounded) return canonical(f, cands);
    StrongPolytope P;
    P.bounded = false;
    for (auto& F : facets) P.facets.push_back(F);
    for (auto& c : cands)
        if (std::any_of(facets.begin(), facets.end(), [&](const Facet& F) { return tight(f, c, F); }))
            P.vertices.push_back(c);
    std::set<TropPoint> rec;
    for (auto& p : C.pieces)
        for (auto& [x, y] : p.rec) rec.insert(C.R.unmap({p.k, x, y}).primitive());
    P.recession.assign(rec.begin(), rec.end());
    P.contains_origin = std::all_of(facets.begin(), facets.end(), [](const Facet& F) { return sgn(F.a) <= 0; });
    return P;
}

StrongPolytope polar(const Fan& f, const std::vector<TropPoint>& pts) {
    // {v : <w, v> >= -1} for v in the mirror; as x -> <x, R w> on the mirror fan
    Fan m = mirror(f);
    std::vector<Facet> fs;
    for (auto& w : pts)
        if (!w.is_zero()) fs.push_back({mirror_point(f, w), -1});
    return from_facets(m, fs);
}

StrongPolytope polar(const Fan& f, const StrongPolytope& P) {
    if (P.bounded) return polar(f, P.vertices);
    // P is the polar of the rescaled normals W, so its polar is Conv(W and 0)
    Fan m = mirror(f);
    std::vector<TropPoint> w{{0, 0, 0}};
    for (auto& F : P.facets) {
        if (sgn(F.a) >= 0) throw DomainError("polar of an unbounded polytope with a facet not separating the origin");
        w.push_back(mirror_point(f, F.v.scaled(-1 / F.a)));
    }
    return strong_hull(m, w);
}

StrongPolytope newton(const Fan& f, const ThetaElement& g) {
    std::vector<TropPoint> supp;
    for (auto& [q, c] : g.terms)
        if (!c.empty()) supp.push_back(q);
    if (supp.empty()) throw DomainError("Newton polytope of the zero element");
    return strong_hull(f, supp);
}

MinkowskiMethod minkowski_method(const std::string& s) {
    if (s == "definition") return MinkowskiMethod::Definition;
    if (s == "separating-rays") return MinkowskiMethod::SeparatingRays;
    if (s == "universal-cover") return MinkowskiMethod::UniversalCover;
    if (s == "per-seed") return MinkowskiMethod::PerSeed;
    throw std::invalid_argument("unknown Minkowski method: " + s);
}

StrongPolytope minkowski(const Fan& f, const std::vector<StrongPolytope>& polys, MinkowskiMethod m) {
    require_positive(f);
    if (polys.empty()) throw DomainError("Minkowski sum of nothing");
    for (auto& P : polys) {
        if (!P.bounded) throw DomainError("Minkowski summand is unbounded");
        if (!contains(f, P, {0, 0, 0})) throw DomainError("Minkowski summand does not contain the origin");
    }
    std::vector<TropPoint> pts{{0, 0, 0}};
    switch (m) {
        case MinkowskiMethod::Definition: {
            std::vector<TropicalFunction> phis;
            std::vector<TropPoint> dirs;
            for (auto& P : polys) {
                phis.push_back(support_function(f, P.vertices));
                for (auto& r : rays_of(phis.back())) dirs.push_back(r);
            }
            auto sum = sample_function(f, dirs, [&](const TropPoint& x) {
                Q s = 0;
                for (auto& p : phis) s += p.eval(x);
                return s;
            });
            std::vector<Facet> fs;
            for (int k = 0; k < sum.ref.fan.n(); ++k) fs.push_back({sum.ref.unmap({k, 1, 0}), sum.values[k]});
            return from_facets(f, fs);
        }
        case MinkowskiMethod::SeparatingRays: {
            Developer dev(f);
            auto T = tuples(polys);
            for (auto& r : separating_rays(f, polys)) {
                Lifted R = dev.lift(r, 0);
                for (auto& t : T) {
                    std::vector<Lifted> L;
                    for (auto& p : t) L.push_back(lift_after(dev, R, p));
                    auto s = add_lifted(dev, L);
                    if (s) pts.push_back(dev.point(*s));
                }
            }
            return strong_hull(f, pts);
        }
        case MinkowskiMethod::UniversalCover: {
            const long T = 4;
            for (auto& t : tuples(polys)) {
                if (t.empty()) continue;
                std::vector<long> turns(t.size(), -T);
                turns[0] = 0;
                while (true) {
                    if (auto s = add_in_cone(f, t, turns)) pts.push_back(*s);
                    size_t i = 1;
                    while (i < t.size() && turns[i] == T) turns[i++] = -T;
                    if (i >= t.size()) break;
                    ++turns[i];
                }
            }
            return strong_hull(f, pts);
        }
        case MinkowskiMethod::PerSeed: {
            if (!finite_type(f)) throw DomainError("per-seed Minkowski sum requested on a fan where lines wrap");
            for (auto& S : seeds(f)) {
                const Fan& F = S.ref.fan;
                for (auto& t : tuples(polys)) {
                    Vec2 X(0, 0);
                    for (auto& p : t) X = X + to_seed(F, S.ref.map(p));
                    pts.push_back(X.is_zero() ? TropPoint{0, 0, 0} : S.ref.unmap(to_canonical(F, X)));
                }
            }
            return strong_hull(f, pts);
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<TropPoint> lattice_points(const Fan& f, const StrongPolytope& P) {
    if (!P.bounded) throw DomainError("unbounded polytope for enumeration");
    Charts C = charts(f, normalize_facets(f, P.facets));
    std::set<TropPoint> out;
    for (auto& pc : C.pieces) {
        if (pc.verts.empty()) continue;
        Q mx = 0, my = 0;
        for (auto& [x, y] : pc.verts) {
            mx = std::max(mx, x);
            my = std::max(my, y);
        }
        Z X = mx.get_num() / mx.get_den(), Y = my.get_num() / my.get_den();
        for (Z a = 0; a <= X; ++a)
            for (Z b = 0; b <= Y; ++b)
                if (feasible(pc.cons, Q(a), Q(b))) out.insert(C.R.unmap({pc.k, Q(a), Q(b)}));
    }
    return {out.begin(), out.end()};
}

std::vector<std::vector<TropPoint>> pieces(const Fan& f, const StrongPolytope& P) {
    if (!P.bounded) throw DomainError("pieces of an unbounded polytope");
    Charts C = charts(f, normalize_facets(f, P.facets));
    std::vector<std::vector<TropPoint>> out;
    for (auto& pc : C.pieces) {
        if (pc.verts.empty()) continue;
        Q cx = 0, cy = 0;
        for (auto& [x, y] : pc.verts) {
            cx += x;
            cy += y;
        }
        cx /= long(pc.verts.size());
        cy /= long(pc.verts.size());
        auto vs = pc.verts;
        std::sort(vs.begin(), vs.end(), [&](auto& u, auto& w) {
            return angle_less(Vec2(u.first - cx, u.second - cy), Vec2(w.first - cx, w.second - cy));
        });
        std::vector<TropPoint> poly;
        for (auto& [x, y] : vs) poly.push_back(C.R.unmap({pc.k, x, y}));
        out.push_back(poly);
    }
    return out;
}

bool finite_type(const Fan& f) {
    require_positive(f);
    Developer dev(f);
    for (int s = 0; s < f.n(); ++s)
        for (long a = 0; a <= 6; ++a)
            for (long b = 0; a + b <= 6; ++b) {
                if (a + b == 0 || zgcd(a, b) != 1) continue;
                if (trace_line(f, dev, normalize(f, {s, a, b}), -1).wraps > 0) return false;
            }
    return true;
}

std::vector<Seed> seeds(const Fan& f, size_t cap) {
    using State = std::map<TropPoint, long>;
    auto build = [&](const State& st) {
        std::vector<TropPoint> dirs;
        for (auto& [d, c] : st) dirs.push_back(d);
        Seed S{refine_all(f, dirs)};
        for (auto& r : S.ref.fan.rays) r.blowups = 0;
        for (auto& [d, c] : st) S.ref.fan.rays[S.ref.map(d).sector].blowups = c;
        return S;
    };
    State init;
    for (int i = 0; i < f.n(); ++i)
        if (f.b(i) > 0) init[ray_point(f, i)] = f.b(i);
    std::set<State> seen{init};
    std::deque<State> todo{init};
    std::vector<Seed> out;
    while (!todo.empty()) {
        State st = todo.front();
        todo.pop_front();
        Seed S = build(st);
        seed_rays(S.ref.fan);  // throws if this is not a toric model
        out.push_back(S);
        for (auto& [d, c] : st) {
            // elementary transformation: one blowup moves to the opposite direction
            Vec2 X = to_seed(S.ref.fan, S.ref.map(d));
            TropPoint e = normalize(f, S.ref.unmap(to_canonical(S.ref.fan, -X))).primitive();
            State nx = st;
            if (--nx[d] == 0) nx.erase(d);
            ++nx[e];
            if (seen.insert(nx).second) {
                if (seen.size() > cap) throw DomainError("seed enumeration exceeded its cap");
                todo.push_back(nx);
            }
        }
    }
    return out;
}

SectionsReport sections(const Fan& f, const BoundaryDivisor& W) {
    require_positive(f);
    std::vector<TropPoint> dirs;
    std::set<TropPoint> seen;
    for (auto& [v, a] : W.terms) {
        if (v.is_zero() || !v.integral()) throw DomainError("divisor directions must be nonzero integral points");
        TropPoint p = normalize(f, v);
        if (p.primitive() != p) throw DomainError("divisor directions must be primitive");
        if (!seen.insert(p).second) throw DomainError("repeated divisor direction");
        dirs.push_back(p);
    }
    Refinement R = refine_all(f, dirs);
    int n = R.fan.n();
    std::vector<Q> coef(n, 0);
    for (auto& [v, a] : W.terms) coef[R.map(normalize(f, v)).sector] = a;
    std::vector<Facet> facets;
    for (int k = 0; k < n; ++k) facets.push_back({R.unmap({k, 1, 0}), -coef[k]});

    SectionsReport out;
    auto nf = normalize_facets(f, facets);
    Charts C = charts(f, nf);
    auto cands = chart_vertices(C);
    if (cands.empty()) throw DomainError("the divisor has no sections: empty polytope");
    for (auto& p : C.pieces)
        if (p.unbounded) {
            std::string msg = "unbounded polytope for enumeration; unbounded directions:";
            for (auto& [x, y] : p.rec) {
                TropPoint d = C.R.unmap({p.k, x, y}).primitive();
                msg += " (" + std::to_string(d.sector + 1) + "," + q_to_string(d.a) + "," + q_to_string(d.b) + ")";
            }
            throw DomainError(msg);
        }
    out.polytope = canonical(f, cands);
    out.points = lattice_points(f, out.polytope);
    out.dimension = long(out.points.size());

    auto Hl = intersection_matrix(R.fan);
    std::vector<Q> HW(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) HW[i] += Q(Hl[i][j]) * coef[j];
    out.self_intersection = 0;
    for (int i = 0; i < n; ++i) out.self_intersection += coef[i] * HW[i];
    out.effective = std::all_of(coef.begin(), coef.end(), [](const Q& a) { return sgn(a) >= 0; });
    out.d_ample = std::all_of(HW.begin(), HW.end(), [](const Q& x) { return sgn(x) > 0; });

    auto on_face = [&](const TropPoint& x, int k) { return pair(f, x, facets[k].v) == -coef[k]; };
    for (int k = 0; k < n; ++k) {
        EdgeReport e;
        e.v = facets[k].v;
        e.coeff = coef[k];
        for (auto& p : out.points)
            if (on_face(p, k)) ++e.lattice_points;
        e.d = e.lattice_points - 1;
        e.WD = HW[k];
        int kp = (k + n - 1) % n, kn = (k + 1) % n;
        for (auto& c : cands) {
            if (!on_face(c, k)) continue;
            if (on_face(c, kp)) e.meets_prev = true;
            if (on_face(c, kn)) e.meets_next = true;
        }
        e.applicable = e.d >= 1 && n >= 2;
        e.inequality = e.WD >= Q(e.d);
        e.equality = e.WD == Q(e.d);
        e.consistent = e.equality == (e.meets_prev && e.meets_next);
        out.edges.push_back(e);
    }
    return out;
}

}  // namespace looij
