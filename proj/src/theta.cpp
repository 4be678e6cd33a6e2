#include "looij/theta.hpp"

#include <algorithm>

namespace looij {

namespace {

std::pair<std::string, std::string> vkey(const Vec2& v) { return {q_to_string(v.x), q_to_string(v.y)}; }

IV to_iv_checked(const Vec2& v) {
    if (!is_integer(v.x) || !is_integer(v.y)) throw DomainError("theta index must be integral");
    return {v.x.get_num().get_si(), v.y.get_num().get_si()};
}

void for_each_cls(int s, int K, const std::function<void(Cls)>& fn) {
    std::function<void(int, int, Cls)> rec = [&](int i, int left, Cls acc) {
        if (i == s) {
            fn(acc);
            return;
        }
        for (int e = 0; e <= left; ++e) rec(i + 1, left - e, acc + cls_unit(i) * Cls(e));
    };
    rec(0, K, 0);
}

}  // namespace

int BrokenLine::bends() const {
    int b = 0;
    for (size_t i = 1; i < segs.size(); ++i)
        if (segs[i].m != segs[i - 1].m) ++b;
    return b;
}

ThetaElement ThetaElement::theta(const TropPoint& q, int order) {
    ThetaElement t;
    t.order = order;
    t.terms[q.is_zero() ? TropPoint{0, 0, 0} : q] = Series::one();
    return t;
}

ThetaElement ThetaElement::operator+(const ThetaElement& o) const {
    ThetaElement r = *this;
    r.order = std::max(order, o.order);
    for (auto& [q, c] : o.terms) {
        r.terms[q] += c;
        if (r.terms[q].empty()) r.terms.erase(q);
    }
    return r;
}

ThetaElement ThetaElement::scaled(const ClassPoly& c) const {
    ThetaElement r;
    r.order = order;
    for (auto& [q, x] : terms) {
        auto y = x.mul(c, order);
        if (!y.empty()) r.terms[q] = y;
    }
    return r;
}

ThetaEngine::ThetaEngine(const Fan& f, int K) : f_(f), K_(K) {
    require_positive(f_);
    d_ = &consistent_diagram(f_, K, false);
    rays_ = loop_rays(*d_, K);
    m_ = d_->m;
    var_ray_.assign(d_->s, 0);
    for (int i = 0; i < f_.n(); ++i)
        for (long j = 0; j < f_.b(i); ++j) var_ray_[d_->cls_base[i] + j] = i;
}

IV ThetaEngine::seed(const TropPoint& q) const { return to_iv_checked(to_seed(f_, q)); }

TropPoint ThetaEngine::canonical(const IV& m) const { return to_canonical(f_, m.vec()); }

bool ThetaEngine::on_wall(const Vec2& Q) const {
    for (auto& r : rays_)
        if (same_direction(r.u.vec(), Q)) return true;
    return false;
}

Vec2 ThetaEngine::endpoint_near(const IV& dir, int side) const {
    if (dir.zero()) throw DomainError("no endpoint near the origin");
    Vec2 D = dir.vec(), perp = Vec2(-dir.y, dir.x) * Q(side);
    for (Z N = 1000003;; N = N * 10 + 7) {
        Vec2 Qp = D * Q(N) + perp;
        bool clear = !on_wall(Qp);
        for (auto& r : rays_) {
            Vec2 u = r.u.vec();
            if (swedge(D, u) == side && swedge(u, Qp) == side) clear = false;
        }
        if (clear) return Qp;
    }
}

Vec2 ThetaEngine::endpoint_in_sector(int sector) const { return endpoint_near(m_[f_.mod(sector)], +1); }

std::vector<BrokenLine> ThetaEngine::broken_lines(const TropPoint& q0, const Vec2& Qe) const {
    if (on_wall(Qe) || Qe.is_zero()) throw DomainError("endpoint lies on a wall");
    std::vector<BrokenLine> out;
    if (q0.is_zero()) {
        out.push_back({{0, 0, 0}, Qe, {{Qe, {0, 0}, 0, 1, {0, 0}}}});
        return out;
    }
    if (!q0.integral()) throw DomainError("theta index must be integral");
    TropPoint q = normalize(f_, q0);
    IV qt = seed(q);
    int s = d_->s;

    // backward search: segments collected from the endpoint towards infinity
    std::vector<Segment> path;
    std::function<void(const Vec2&, const IV&, Cls, const Q&)> dfs = [&](const Vec2& P, const IV& m, Cls left,
                                                                         const Q& coeff) {
        const LoopRay* hit = nullptr;
        Q best;
        Vec2 mv = m.vec();
        for (auto& r : rays_) {
            long mu = iwedge(m, r.u);
            if (mu == 0) continue;
            Vec2 u = r.u.vec();
            Q lam = wedge(u, P) / Q(mu), sc = wedge(P, mv) / Q(-mu);
            if (sgn(lam) <= 0) continue;
            if (sgn(sc) == 0) throw DomainError("endpoint not generic: broken line through the origin");
            if (sgn(sc) < 0) continue;
            if (!hit || lam < best) {
                hit = &r;
                best = lam;
            }
        }
        if (!hit) {
            if (left == 0 && m == qt) {
                BrokenLine bl{q, Qe, {}};
                bl.segs.assign(path.rbegin(), path.rend());
                // coefficients and classes accumulate forward
                Q c = 1;
                Cls k = 0;
                for (size_t i = 0; i < bl.segs.size(); ++i) {
                    // path stores per-segment the term taken when entering it
                    c *= bl.segs[i].coeff;
                    k += bl.segs[i].cls;
                    bl.segs[i].coeff = c;
                    bl.segs[i].cls = k;
                }
                out.push_back(std::move(bl));
            }
            return;
        }
        Vec2 H = P + mv * best;
        long e = std::labs(iwedge(hit->u, m));
        for (auto& [k, c] : hit->power(e, K_).terms) {
            if (!cls_divides(k.cls, left)) continue;
            // before the wall the exponent was m - a; the segment after the wall took term (a, c)
            path.back().start = H;
            path.back().wall = k.m.zero() ? IV{0, 0} : hit->u;
            Cls took_cls = k.cls;
            Q took = c;
            Segment prev{H, m - k.m, 0, 1, {0, 0}};
            Segment saved = path.back();
            path.back().coeff = took;
            path.back().cls = took_cls;
            path.push_back(prev);
            dfs(H, m - k.m, left - k.cls, coeff * c);
            path.pop_back();
            path.back() = saved;
        }
    };
    for_each_cls(s, K_, [&](Cls g) {
        IV mf = qt;
        for (int i = 0; i < s; ++i) mf = mf + m_[var_ray_[i]] * long(cls_get(g, i));
        path.clear();
        path.push_back({Qe, mf, 0, 1, {0, 0}});
        dfs(Qe, mf, g, 1);
    });
    // merge consecutive equal exponents; a term z^0 t^g at a wall changes the
    // coefficient but not the direction, so the later coefficient wins
    for (auto& bl : out) {
        std::vector<Segment> merged;
        for (auto& sg : bl.segs) {
            if (!merged.empty() && merged.back().m == sg.m) {
                merged.back().coeff = sg.coeff;
                merged.back().cls = sg.cls;
                continue;
            }
            merged.push_back(sg);
        }
        bl.segs = merged;
    }
    std::sort(out.begin(), out.end(), [](const BrokenLine& a, const BrokenLine& b) {
        const Segment &x = a.last(), &y = b.last();
        if (x.cls != y.cls) return x.cls < y.cls;
        if (x.m != y.m) return x.m < y.m;
        if (a.segs.size() != b.segs.size()) return a.segs.size() < b.segs.size();
        return x.coeff < y.coeff;
    });
    return out;
}

Series ThetaEngine::expand(const TropPoint& q0, const Vec2& Qe) const {
    TropPoint q = q0.is_zero() ? TropPoint{0, 0, 0} : normalize(f_, q0);
    auto key = std::make_pair(q, vkey(Qe));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Series s;
    for (auto& bl : broken_lines(q, Qe)) s.add({bl.last().m, bl.last().cls}, bl.last().coeff);
    cache_[key] = s;
    return s;
}

Series ThetaEngine::expand(const ThetaElement& f, const Vec2& Qe) const {
    Series s;
    for (auto& [q, c] : f.terms) {
        Series e = expand(q, Qe);
        for (auto& [k, x] : c.terms) s += e.shifted(k.m, k.cls).scaled(x).truncated(K_);
    }
    return s;
}

ClassPoly ThetaEngine::structure_constant(const TropPoint& q1, const TropPoint& q2, const TropPoint& q,
                                          int side) const {
    if (q.is_zero()) throw DomainError("structure constants at 0 are read from the product");
    IV qt = seed(q);
    Vec2 Qe = endpoint_near(qt, side);
    auto L1 = broken_lines(q1, Qe), L2 = broken_lines(q2, Qe);
    ClassPoly out;
    for (auto& a : L1)
        for (auto& b : L2) {
            if (a.last().m + b.last().m != qt) continue;
            Cls c = a.last().cls + b.last().cls;
            if (cls_order(c) > K_) continue;
            out.add({{0, 0}, c}, a.last().coeff * b.last().coeff);
        }
    return out;
}

ThetaElement ThetaEngine::to_theta_basis(const Series& g0, const Vec2& Qe) const {
    ThetaElement out;
    out.order = K_;
    Series g = g0.truncated(K_);
    for (int guard = 0; !g.empty(); ++guard) {
        if (guard > 100000) throw std::logic_error("to_theta_basis did not terminate");
        int j = g.min_order();
        Series lead = g.order_part(j);
        for (auto& [k, c] : lead.terms) {
            TropPoint q = canonical(k.m);
            out.terms[q].add({{0, 0}, k.cls}, c);
            g -= expand(q, Qe).shifted({0, 0}, k.cls).scaled(c).truncated(K_);
        }
        if (!g.empty() && g.min_order() <= j) throw std::logic_error("to_theta_basis: peeling did not progress");
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.empty() ? out.terms.erase(it) : std::next(it);
    return out;
}

ThetaElement ThetaEngine::multiply(const ThetaElement& a, const ThetaElement& b) const {
    Vec2 Qe = endpoint_in_sector(0);
    Series pa = expand(a, Qe), pb = expand(b, Qe);
    return to_theta_basis(pa.mul(pb, K_), Qe);
}

ClassPoly ThetaEngine::trace0(const ThetaElement& f) const {
    auto it = f.terms.find({0, 0, 0});
    return it == f.terms.end() ? ClassPoly{} : it->second;
}

ClassPoly ThetaEngine::trace(const ThetaElement& f, const TropPoint& r0) const {
    if (r0.is_zero()) return trace0(f);
    TropPoint r = normalize(f_, r0);
    std::string why;
    // cluster complex: read the z^r coefficient next to rho_r
    if (trace_line(f_, r, -1).wraps == 0) {
        IV rt = seed(r);
        Series e = expand(f, endpoint_near(rt, -1));
        ClassPoly out;
        for (auto& [k, c] : e.terms)
            if (k.m == rt) out.add({{0, 0}, k.cls}, c);
        return out;
    }
    why = "r is not in the cluster complex (its line wraps)";
    // ray subalgebra: f is a polynomial in theta_r
    TropPoint p = r.primitive();
    if (p != r) throw DomainError("unsupported trace: " + why + "; ray route needs r primitive");
    long N = 0;
    for (auto& [q, c] : f.terms) {
        if (q.is_zero()) continue;
        TropPoint qp = q.primitive();
        if (qp != p) throw DomainError("unsupported trace: " + why + "; f is not supported on the ray of r");
        N = std::max(N, q.index().get_si());
    }
    std::vector<ThetaElement> pw{ThetaElement::theta({0, 0, 0}, K_)};
    ThetaElement tp = ThetaElement::theta(p, K_);
    for (long j = 1; j <= N; ++j) pw.push_back(multiply(pw.back(), tp));
    for (auto& P : pw)
        for (auto& [q, c] : P.terms)
            if (!q.is_zero() && q.primitive() != p)
                throw DomainError("unsupported trace: powers of theta_r leave the ray of r");
    ThetaElement rest = f;
    std::vector<ClassPoly> a(N + 1);
    for (long j = N; j >= 0; --j) {
        TropPoint qj = j == 0 ? TropPoint{0, 0, 0} : normalize(f_, p.scaled(j));
        auto it = rest.terms.find(qj);
        if (it == rest.terms.end()) continue;
        ClassPoly lead = pw[j].terms.at(qj);
        a[j] = it->second.mul(lead.inverse(K_), K_);
        rest = rest + pw[j].scaled(a[j].scaled(-1));
    }
    for (auto& [q, c] : rest.terms)
        if (!c.empty()) throw std::logic_error("ray route: triangular solve left a remainder");
    if (!a[0].empty()) throw DomainError("unsupported trace: the polynomial in theta_r has a constant term");
    ClassPoly out;
    for (long j = 1; j <= N; ++j) out += a[j].mul(trace0(pw[j - 1]), K_);
    return out;
}

Q specialize(const ClassPoly& c, const std::vector<Q>& values) {
    Q s = 0;
    for (auto& [k, x] : c.terms) {
        Q t = x;
        for (int i = 0; i < kMaxClassVars; ++i) {
            int e = cls_get(k.cls, i);
            if (e == 0) continue;
            Q v = i < int(values.size()) ? values[i] : Q(1);
            for (int j = 0; j < e; ++j) t *= v;
        }
        s += t;
    }
    return s;
}

Specialized specialize(const ThetaElement& f, const std::vector<Q>& values) {
    Specialized out;
    for (auto& [q, c] : f.terms) {
        Q v = specialize(c, values);
        if (sgn(v) != 0) out.terms[q] = v;
        for (auto& [k, x] : c.terms)
            if (cls_order(k.cls) >= f.order && f.order > 0) out.truncation_sensitive = true;
    }
    return out;
}

}  // namespace looij
