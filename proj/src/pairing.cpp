#include "looij/pairing.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace looij {

namespace {

std::string fan_key(const Fan& f) {
    std::ostringstream s;
    for (auto& r : f.rays) s << r.self_int << ':' << r.blowups << ',';
    return s.str();
}

std::string point_key(const TropPoint& p) {
    return std::to_string(p.sector) + "|" + q_to_string(p.a) + "|" + q_to_string(p.b);
}

// all turns m for which lift(p, m) can fall in lifted sectors [lo, hi]
std::pair<long, long> turn_range(const Fan& f, const TropPoint& p, long lo, long hi) {
    long n = f.n();
    auto fl = [&](long x) { return x >= 0 ? x / n : -((-x + n - 1) / n); };
    return {fl(lo - p.sector) - 1, fl(hi - p.sector) + 1};
}

}  // namespace

Q TropicalFunction::eval_fine(const TropPoint& p0) const {
    if (p0.is_zero()) return 0;
    TropPoint p = normalize(ref.fan, p0);
    return p.a * values[p.sector] + p.b * values[ref.fan.mod(p.sector + 1)];
}

Q TropicalFunction::eval(const TropPoint& p) const { return eval_fine(ref.map(p)); }

std::vector<Q> TropicalFunction::bends() const {
    auto H = intersection_matrix(ref.fan);
    std::vector<Q> out(values.size());
    for (size_t i = 0; i < H.size(); ++i)
        for (size_t j = 0; j < H.size(); ++j) out[i] += H[i][j] * values[j];
    return out;
}

std::vector<ClusterWall> positive_walls(const Fan& f, const TropPoint& q0) {
    if (f.toric()) return {};
    static std::mutex mu;
    static std::map<std::string, std::vector<ClusterWall>> cache;
    TropPoint q = normalize(f, q0);
    std::string key = fan_key(f) + "/" + point_key(q.primitive());
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto L = trace_line(f, q, -1);
    if (L.wraps > 0) throw DomainError("q is not in the cluster complex (its line wraps)");
    auto w = cluster_walls(f, to_seed(f, L.minus), to_seed(f, q));
    std::lock_guard<std::mutex> g(mu);
    cache[key] = w;
    return w;
}

PairResult pair_cert(const Fan& f, const TropPoint& q0, const TropPoint& v0) {
    require_positive(f);
    PairResult res;
    if (q0.is_zero() || v0.is_zero()) return res;
    TropPoint q = normalize(f, q0), v = normalize(f, v0);
    Developer dev(f);
    auto L = trace_line(f, dev, q, -1);
    Lifted Ql{L.k0, L.Q0};
    const Lifted& E = L.end_minus;

    // negative window: lifts of v strictly between q and -q
    auto [m0, m1] = turn_range(f, v, L.k0, E.j);
    bool any = false;
    for (long m = m0; m <= m1; ++m) {
        Lifted V = dev.lift(v, m);
        if (cum_cmp(dev, Ql, V) < 0 && cum_cmp(dev, V, E) < 0) {
            Q val = wedge(V.X, L.Q0);
            ++res.cert.k;
            if (!any || val < res.value) {
                res.value = val;
                res.cert.lift = m;
            }
            any = true;
        }
    }
    if (any) {
        res.cert.kase = 'A';
        return res;
    }
    if (L.wraps > 0) {
        res.cert.kase = 'W';
        return res;
    }

    // positive side: transport q's next lift clockwise to the lift of v in [E, Q1]
    Lifted Q1 = dev.lift(q, 1);
    std::optional<Lifted> V;
    auto [p0, p1] = turn_range(f, v, E.j, Q1.j);
    for (long m = p0; m <= p1 && !V; ++m) {
        Lifted c = dev.lift(v, m);
        if (cum_cmp(dev, E, c) <= 0 && cum_cmp(dev, c, Q1) <= 0) {
            V = c;
            res.cert.lift = m;
        }
    }
    if (!V) throw std::logic_error("pair: no lift of v in the positive range");
    std::vector<std::pair<Lifted, const ClusterWall*>> crossed;
    auto walls = positive_walls(f, q);
    for (auto& w : walls) {
        auto [a, b] = turn_range(f, w.ray, V->j, Q1.j);
        for (long m = a; m <= b; ++m) {
            Lifted U = dev.lift(w.ray, m);
            if (cum_cmp(dev, *V, U) < 0 && cum_cmp(dev, U, Q1) < 0) crossed.push_back({U, &w});
        }
    }
    std::sort(crossed.begin(), crossed.end(),
              [&](auto& x, auto& y) { return cum_cmp(dev, x.first, y.first) > 0; });
    Vec2 w = Q1.X;
    for (auto& [U, cw] : crossed) {
        w = w - U.X * (Q(cw->mult) * wedge(U.X, w));
        res.cert.transcript.push_back({cw->ray, cw->mult, U.X, w});
    }
    res.value = wedge(V->X, w);
    res.cert.kase = 'B';
    return res;
}

Q pair(const Fan& f, const TropPoint& q, const TropPoint& v) { return pair_cert(f, q, v).value; }

bool replay(const Fan& f, const TropPoint& q0, const TropPoint& v0, const PairResult& r) {
    if (r.cert.kase == '0' || r.cert.kase == 'W') return sgn(r.value) == 0;
    TropPoint q = normalize(f, q0), v = normalize(f, v0);
    Developer dev(f);
    Lifted V = dev.lift(v, r.cert.lift);
    if (r.cert.kase == 'A') return wedge(V.X, dev.lift(q).X) == r.value;
    Vec2 w = dev.lift(q, 1).X;
    for (auto& s : r.cert.transcript) {
        w = w - s.U * (Q(s.mult) * wedge(s.U, w));
        if (!(w == s.w)) return false;
    }
    return wedge(V.X, w) == r.value;
}

std::vector<Q> solve_linear(std::vector<std::vector<Q>> A, std::vector<Q> rhs) {
    size_t n = A.size();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && sgn(A[p][c]) == 0) ++p;
        if (p == n) throw DomainError("singular intersection matrix");
        std::swap(A[p], A[c]);
        std::swap(rhs[p], rhs[c]);
        for (size_t r = 0; r < n; ++r) {
            if (r == c || sgn(A[r][c]) == 0) continue;
            Q t = A[r][c] / A[c][c];
            for (size_t k = c; k < n; ++k) A[r][k] -= t * A[c][k];
            rhs[r] -= t * rhs[c];
        }
    }
    std::vector<Q> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / A[i][i];
    return x;
}

TropicalFunction sample_function(const Fan& f, const std::vector<TropPoint>& dirs,
                                 const std::function<Q(const TropPoint&)>& g) {
    TropicalFunction t{refine_all(f, dirs), {}};
    for (int k = 0; k < t.ref.fan.n(); ++k) t.values.push_back(g(t.ref.unmap({k, 1, 0})));
    return t;
}

std::vector<TropPoint> theta_bend_candidates(const Fan& f, const TropPoint& q0) {
    std::vector<TropPoint> out;
    if (q0.is_zero()) return out;
    TropPoint q = normalize(f, q0);
    Developer dev(f);
    auto L = trace_line(f, dev, q, -1);
    out.push_back(q);
    out.push_back(L.minus);
    if (!L.b_q.is_zero()) out.push_back(L.b_q);
    for (auto& z : L.zero_boundary)
        if (!z.is_zero()) out.push_back(z);
    // ties between lifts of q: v parallel to Q_a - Q_b
    long n = f.n();
    std::vector<Vec2> lifts;
    for (long m = -1; m <= L.wraps + 1; ++m) lifts.push_back(dev.lift(q, m).X);
    for (size_t a = 0; a < lifts.size(); ++a)
        for (size_t b = 0; b < lifts.size(); ++b) {
            if (a == b) continue;
            Vec2 D = lifts[a] - lifts[b];
            if (D.is_zero()) continue;
            for (long j = L.k0 - n; j <= L.end_minus.j + n; ++j)
                if (dev.in_sector(j, D)) {
                    out.push_back(dev.point({j, D}));
                    break;
                }
        }
    if (L.wraps == 0)
        for (auto& w : positive_walls(f, q)) out.push_back(w.ray);
    return out;
}

TropTheta trop_theta(const Fan& f, const TropPoint& q0) {
    require_positive(f);
    TropTheta T;
    if (q0.is_zero()) {
        T.fn = sample_function(f, {}, [](const TropPoint&) { return Q(0); });
        return T;
    }
    if (!q0.integral()) throw DomainError("theta requires an integral point");
    TropPoint q = normalize(f, q0);
    auto cands = theta_bend_candidates(f, q);
    T.fn = sample_function(f, cands, [&](const TropPoint& x) { return pair(f, q, x); });
    // linear on each refined sector
    const Fan& F = T.fn.ref.fan;
    for (int k = 0; k < F.n(); ++k)
        for (auto [a, b] : {std::pair<int, int>{1, 1}, {2, 1}, {1, 3}}) {
            TropPoint p{k, a, b};
            if (pair(f, q, T.fn.ref.unmap(p)) != T.fn.eval_fine(p))
                throw std::logic_error("theta is not linear on a refined sector");
        }
    T.b_q = trace_line(f, q, -1).b_q;
    if (trace_line(f, q, -1).wraps == 0) {
        auto bends = T.fn.bends();
        for (auto& w : positive_walls(f, q)) {
            TropPoint r = T.fn.ref.map(w.ray);
            Q val = T.fn.values[r.sector];
            if (sgn(val) <= 0) continue;
            T.positive_bends.push_back({w.ray, w.mult, bends[r.sector], -Q(w.mult) * val});
        }
    }
    return T;
}

BetaPsi beta_and_psi(const Fan& f, const TropPoint& v0) {
    if (v0.is_zero() || !v0.integral()) throw DomainError("beta requires a nonzero integral point");
    TropPoint v = normalize(f, v0);
    BetaPsi out;
    Refinement R = refine_all(f, {v});
    TropPoint vr = R.map(v);
    int idx = vr.sector;
    Q len = vr.a;
    auto Hl = intersection_matrix(R.fan);
    size_t n = Hl.size();
    std::vector<std::vector<Q>> H(n, std::vector<Q>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) H[i][j] = Hl[i][j];
    std::vector<Q> e(n, 0);
    e[idx] = -1;
    auto y = solve_linear(H, e);
    Z l = 1;
    for (auto& c : y) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    out.b = l.get_si();
    out.beta = {R, {}};
    out.psi = {R, {}};
    for (auto& c : y) {
        out.beta.values.push_back(c * len);
        out.psi.values.push_back(c * Q(l));
    }
    return out;
}

TropicalFunction min_of(const Fan& f, const std::vector<TropicalFunction>& fs) {
    std::vector<TropPoint> dirs;
    for (auto& t : fs)
        for (int k = 0; k < t.ref.fan.n(); ++k) dirs.push_back(t.ref.unmap({k, 1, 0}));
    auto ev = [&](const TropPoint& x) {
        Q m = fs.front().eval(x);
        for (auto& t : fs) m = std::min(m, t.eval(x));
        return m;
    };
    Refinement R = refine_all(f, dirs);
    // crossings of each pair inside refined sectors
    for (int k = 0; k < R.fan.n(); ++k) {
        TropPoint A = R.unmap({k, 1, 0}), B = R.unmap({k + 1, 1, 0});
        for (size_t i = 0; i < fs.size(); ++i)
            for (size_t j = i + 1; j < fs.size(); ++j) {
                Q da = fs[i].eval(A) - fs[j].eval(A), db = fs[i].eval(B) - fs[j].eval(B);
                // s*A + t*B with s*da + t*db = 0
                if (sgn(da) * sgn(db) < 0) dirs.push_back(R.unmap({k, abs(db), abs(da)}));
            }
    }
    return sample_function(f, dirs, ev);
}

namespace {

// candidate theta indices reproducing phi on refined sector k
std::vector<TropPoint> sector_candidates(const TropicalFunction& phi, const Developer& dev, int k,
                                         const std::vector<ClusterWall>& walls) {
    const Fan& F = phi.ref.fan;
    std::vector<TropPoint> out;
    Vec2 rk = dev.r(k), rk1 = dev.r(k + 1);
    Q pk = phi.values[k], pk1 = phi.values[F.mod(k + 1)];
    Vec2 W = rk * (-pk1) + rk1 * pk;  // phi(X) = X ^ W on the sector
    if (W.is_zero()) {
        out.push_back({0, 0, 0});
        return out;
    }
    // negative domain: W within pi clockwise of the sector
    out.push_back(dev.point({dev.sector_upto(W, k + 1), W}));
    // positive domain: walk counterclockwise undoing the wall transvections
    if (!walls.empty()) {
        long n = F.n();
        Lifted start{k, rk + rk1};
        std::vector<std::pair<Lifted, long>> ev;
        for (auto& w : walls)
            for (long m = -1; m <= 2; ++m) {
                Lifted U = dev.lift(w.ray, m);
                if (cum_cmp(dev, start, U) < 0 && U.j < k + n + 1) ev.push_back({U, w.mult});
            }
        std::sort(ev.begin(), ev.end(), [&](auto& a, auto& b) { return cum_cmp(dev, a.first, b.first) < 0; });
        Vec2 w = W;
        Lifted from = start;
        auto try_here = [&](const Lifted& A, const Lifted* B) -> bool {
            for (long j = A.j; j <= (B ? B->j : A.j + n); ++j) {
                if (!dev.in_sector(j, w)) continue;
                Lifted C{j, w};
                if (cum_cmp(dev, A, C) >= 0 && (!B || cum_cmp(dev, C, *B) <= 0)) {
                    out.push_back(dev.point(C));
                    return true;
                }
            }
            return false;
        };
        bool found = false;
        for (auto& [U, b] : ev) {
            if (try_here(from, &U)) {
                found = true;
                break;
            }
            w = w + U.X * (Q(b) * wedge(U.X, w));
            from = U;
        }
        if (!found) try_here(from, nullptr);
    }
    return out;
}

std::vector<ClusterWall> all_walls(const Fan& F, int K) {
    std::vector<ClusterWall> out;
    if (F.toric()) return out;
    const Diagram& d = consistent_diagram(F, K, true);
    std::vector<IV> dirs;
    for (auto& w : d.walls) {
        dirs.push_back(primitive(w.dir));
        if (w.incoming) dirs.push_back(primitive(-w.dir));
    }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    for (auto& u : dirs) {
        long b = ray_multiplicity(d, u, K);
        if (b > 0) out.push_back({u, to_canonical(F, u.vec()).primitive(), b});
    }
    return out;
}

}  // namespace

Decomposition decompose(const TropicalFunction& phi) {
    Decomposition D;
    const Fan& F = phi.ref.fan;
    require_positive(F);
    Developer dev(F);
    auto walls = all_walls(F, 6);
    std::vector<TropPoint> cands;
    for (int k = 0; k < F.n(); ++k)
        for (auto& c : sector_candidates(phi, dev, k, walls))
            if (std::find(cands.begin(), cands.end(), c) == cands.end()) cands.push_back(c);

    std::vector<TropPoint> samples;
    for (int k = 0; k < F.n(); ++k) samples.push_back({k, 1, 0});
    std::mt19937 g(20240501);
    std::uniform_int_distribution<int> sd(0, F.n() - 1);
    std::uniform_int_distribution<long> cd(1, 40);
    for (int i = 0; i < 200; ++i) samples.push_back({sd(g), cd(g), cd(g)});

    std::vector<std::vector<Q>> val;
    std::vector<TropPoint> kept;
    for (auto& c : cands) {
        std::vector<Q> row;
        bool above = true;
        for (auto& s : samples) {
            Q x = pair(F, c, s);
            if (x < phi.eval_fine(s)) {
                above = false;
                break;
            }
            row.push_back(x);
        }
        if (above) {
            kept.push_back(c);
            val.push_back(row);
        }
    }
    auto attains = [&](const std::vector<bool>& use) {
        for (size_t s = 0; s < samples.size(); ++s) {
            bool hit = false;
            for (size_t c = 0; c < kept.size() && !hit; ++c)
                if (use[c] && val[c][s] == phi.eval_fine(samples[s])) hit = true;
            if (!hit) return false;
        }
        return true;
    };
    std::vector<bool> use(kept.size(), true);
    if (kept.empty() || !attains(use)) {
        D.reason = "no family of theta functions reproduces the function";
        return D;
    }
    for (size_t c = 0; c < kept.size(); ++c) {
        use[c] = false;
        if (!attains(use)) use[c] = true;
    }
    for (size_t c = 0; c < kept.size(); ++c)
        if (use[c]) D.qs.push_back(phi.ref.unmap(kept[c]));
    std::sort(D.qs.begin(), D.qs.end());
    D.ok = true;
    return D;
}

bool is_tropical(const TropicalFunction& phi) {
    for (auto& b : phi.bends())
        if (sgn(b) > 0) return false;
    return decompose(phi).ok;
}

}  // namespace looij
