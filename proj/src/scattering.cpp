#include "looij/scattering.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

namespace looij {

namespace {

IV to_iv(const Vec2& v) {
    if (!is_integer(v.x) || !is_integer(v.y)) throw DomainError("seed ray is not integral");
    return {v.x.get_num().get_si(), v.y.get_num().get_si()};
}

// ordering of rays for the loop: angle in [0, 2pi) from (1,0)
bool loop_less(const IV& a, const IV& b) { return iangle_less(a, b); }

}  // namespace

std::vector<IV> seed_rays(const Fan& f) {
    Developer dev(f, true);
    int n = f.n();
    std::vector<IV> m;
    for (int i = 0; i < n; ++i) m.push_back(to_iv(dev.r(i)));
    bool closes = dev.r(n) == dev.r(0) && dev.r(n + 1) == dev.r(1);
    // winds once: consecutive rays strictly increase in angle from (1,0)
    bool once = true;
    for (int i = 0; i + 1 < n; ++i)
        if (!loop_less(m[i], m[i + 1])) once = false;
    if (!closes || !once) throw DomainError("blowup data do not come from a toric model");
    return m;
}

Diagram initial_diagram(const Fan& f, int order, bool aggregate) {
    if (order < 1 || order > kMaxOrder) throw DomainError("order must be in 1..15");
    Diagram d;
    d.order = order;
    d.m = seed_rays(f);
    int idx = 0;
    for (int i = 0; i < f.n(); ++i) {
        d.b.push_back(f.b(i));
        d.cls_base.push_back(idx);
        idx += aggregate ? (f.b(i) > 0 ? 1 : 0) : int(f.b(i));
    }
    d.s = idx;
    if (d.s > kMaxClassVars) throw DomainError("too many blowups for the class encoding (max 16)");
    for (int i = 0; i < f.n(); ++i) {
        if (f.b(i) == 0) continue;
        Series fn = Series::one();
        for (long j = 0; j < f.b(i); ++j) {
            Cls t = cls_unit(d.cls_base[i] + (aggregate ? 0 : int(j)));
            fn = fn.mul(Series::one() + Series::mono(d.m[i], t, 1), order);
        }
        d.walls.push_back({-d.m[i], fn, true});
    }
    return d;
}

const Series& LoopRay::power(long e, int K) const {
    auto it = pw.find(e);
    if (it != pw.end()) return it->second;
    return pw.emplace(e, F.pow(e, K)).first->second;
}

Series LoopRay::cross(const Series& g, int sign, int K) const {
    Series r;
    for (auto& [k, c] : g.terms) {
        long e = sign * iwedge(k.m, u);
        if (e == 0) {
            r.add(k, c);
            continue;
        }
        int left = K - cls_order(k.cls);
        for (auto& [k2, c2] : power(e, K).terms)
            if (cls_order(k2.cls) <= left) r.add({k.m + k2.m, k.cls + k2.cls}, c * c2);
    }
    return r;
}

Series wall_cross(const Series& g, const IV& dir, const Series& f, const IV& from_side, int K) {
    IV u = primitive(dir);
    long s = iwedge(from_side, u);
    if (s == 0) throw DomainError("from_side lies on the wall");
    LoopRay ray{u, f.truncated(K), {}};
    // from the clockwise side (from ^ u > 0) the crossing is counterclockwise
    return ray.cross(g, s > 0 ? 1 : -1, K);
}

std::vector<LoopRay> loop_rays(const Diagram& d, int K) {
    std::vector<std::pair<IV, Series>> acc;
    auto put = [&](const IV& dir, const Series& f) {
        IV u = primitive(dir);
        for (auto& [v, F] : acc)
            if (v == u) {
                F = F.mul(f, K);
                return;
            }
        acc.push_back({u, f.truncated(K)});
    };
    for (auto& w : d.walls) {
        put(w.dir, w.fn);
        if (w.incoming) put(-w.dir, w.fn);
    }
    std::sort(acc.begin(), acc.end(), [](auto& a, auto& b) { return loop_less(a.first, b.first); });
    std::vector<LoopRay> out;
    for (auto& [u, F] : acc)
        if (!(F == Series::one())) out.push_back({u, F, {}});
    return out;
}

Series path_product(const std::vector<LoopRay>& rays, const Series& g, int K) {
    Series cur = g;
    for (auto& r : rays) cur = r.cross(cur, 1, K);
    return cur;
}

Diagram make_consistent(const Diagram& d0, int K) {
    if (K < 1 || K > kMaxOrder) throw DomainError("order must be in 1..15");
    Diagram d = d0;
    d.order = K;
    for (auto& w : d.walls) w.fn = w.fn.truncated(K);
    const IV e[2] = {{1, 0}, {0, 1}};
    for (int j = 1; j <= K; ++j) {
        auto rays = loop_rays(d, j);
        // discrepancy z^{-e} * loop(z^e) - 1, order j part
        Series disc[2];
        for (int i = 0; i < 2; ++i) {
            Series L = path_product(rays, Series::mono(e[i], 0, 1), j).shifted(-e[i], 0);
            L.add({{0, 0}, 0}, -1);
            if (!L.empty() && L.min_order() < j) throw std::logic_error("scattering: lower-order discrepancy");
            disc[i] = L.order_part(j);
        }
        // one correction term per (m, class)
        std::vector<std::tuple<IV, Cls, Q>> adds;
        std::map<Key, bool> seen;
        for (int i = 0; i < 2; ++i)
            for (auto& [k, a] : disc[i].terms) {
                if (seen.count(k)) continue;
                seen[k] = true;
                if (k.m.zero()) throw std::logic_error("scattering: central discrepancy");
                IV u = primitive(-k.m);
                Q c;
                long w0 = iwedge(e[0], u), w1 = iwedge(e[1], u);
                if (w0 != 0)
                    c = -disc[0].coeff(k) / w0;
                else
                    c = -disc[1].coeff(k) / w1;
                if (disc[0].coeff(k) + c * w0 != 0 || disc[1].coeff(k) + c * w1 != 0)
                    throw std::logic_error("scattering: discrepancy is not a wall term");
                adds.emplace_back(k.m, k.cls, c);
            }
        // ties: clockwise angle, then class exponent
        std::sort(adds.begin(), adds.end(), [](auto& a, auto& b) {
            auto& ua = std::get<0>(a);
            auto& ub = std::get<0>(b);
            IV pa = primitive(-ua), pb = primitive(-ub);
            if (pa != pb) return loop_less(pb, pa);
            if (ua != ub) return ua < ub;
            return std::get<1>(a) < std::get<1>(b);
        });
        for (auto& [m, cls, c] : adds) {
            IV u = primitive(-m);
            Wall* w = nullptr;
            for (auto& x : d.walls)
                if (!x.incoming && x.dir == u) w = &x;
            if (!w) {
                d.walls.push_back({u, Series::one(), false});
                w = &d.walls.back();
            }
            w->fn = w->fn.mul(Series::one() + Series::mono(m, cls, c), K);
        }
    }
    std::sort(d.walls.begin(), d.walls.end(), [](const Wall& a, const Wall& b) {
        if (a.incoming != b.incoming) return a.incoming;
        return loop_less(a.dir, b.dir);
    });
    return d;
}

bool is_consistent(const Diagram& d, int K) {
    auto rays = loop_rays(d, K);
    for (IV e : {IV{1, 0}, IV{0, 1}, IV{-1, 0}, IV{0, -1}})
        if (!(path_product(rays, Series::mono(e, 0, 1), K) == Series::mono(e, 0, 1))) return false;
    return true;
}

const Diagram& consistent_diagram(const Fan& f, int K, bool aggregate) {
    static std::mutex mu;
    static std::map<std::tuple<std::vector<long>, std::vector<long>, int, bool>, Diagram> cache;
    std::vector<long> si, bl;
    for (auto& r : f.rays) {
        si.push_back(r.self_int);
        bl.push_back(r.blowups);
    }
    auto key = std::make_tuple(si, bl, K, aggregate);
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Diagram d = make_consistent(initial_diagram(f, K, aggregate), K);
    std::lock_guard<std::mutex> g(mu);
    return cache.emplace(key, std::move(d)).first->second;
}

Series ray_function(const Diagram& d, const IV& dir, int K) {
    IV u = primitive(dir);
    Series F = Series::one();
    for (auto& w : d.walls) {
        if (w.dir == u) F = F.mul(w.fn, K);
        if (w.incoming && w.dir == -u) {
            Series g;
            for (auto& [k, c] : w.fn.terms) g.add({-k.m, k.cls}, c);
            F = F.mul(g, K);
        }
    }
    return F;
}

long ray_multiplicity(const Diagram& d, const IV& u, int K) {
    Q c = ray_function(d, u, K).specialized().coeff({-primitive(u), 0});
    if (!is_integer(c)) throw std::logic_error("non-integral wall multiplicity");
    return c.get_num().get_si();
}

namespace {

// strictly inside the counterclockwise sector from lo to hi
bool strictly_between(const Vec2& lo, const Vec2& hi, const Vec2& x) {
    if (same_direction(x, lo) || same_direction(x, hi)) return false;
    int sx = swedge(lo, x), sh = swedge(lo, hi);
    auto half = [&](const Vec2& y, int s) {
        if (s > 0) return 0;
        if (s == 0) return sgn(dot(lo, y)) > 0 ? -1 : 1;
        return 2;
    };
    int hx = half(x, sx), hh = half(hi, sh);
    if (hx != hh) return hx < hh;
    if (hx == 1) return false;
    return swedge(x, hi) > 0;
}

}  // namespace

std::vector<ClusterWall> cluster_walls(const Fan& f, const Vec2& lo, const Vec2& hi, int max_order) {
    if (f.toric()) return {};
    std::vector<std::pair<IV, long>> prev;
    int stable = 0;
    for (int K = 1; K <= std::min(max_order, kMaxOrder); ++K) {
        const Diagram& d = consistent_diagram(f, K, true);
        std::vector<IV> dirs;
        for (auto& w : d.walls) {
            for (IV u : {w.dir, -w.dir}) {
                if (u == -w.dir && !w.incoming) continue;
                if (!strictly_between(lo, hi, u.vec())) continue;
                if (std::find(dirs.begin(), dirs.end(), u) == dirs.end()) dirs.push_back(u);
            }
        }
        std::sort(dirs.begin(), dirs.end(), [&](auto& a, auto& b) { return loop_less(a, b); });
        std::vector<std::pair<IV, long>> cur;
        for (auto& u : dirs) {
            long b = ray_multiplicity(d, u, K);
            if (b != 0) cur.push_back({u, b});
        }
        stable = (K > 1 && cur == prev) ? stable + 1 : 0;
        prev = cur;
        if (stable >= 2) {
            std::vector<ClusterWall> out;
            for (auto& [u, b] : cur) out.push_back({u, to_canonical(f, u.vec()).primitive(), b});
            return out;
        }
    }
    throw DomainError("cluster walls did not stabilize (sector not in the cluster complex?)");
}

Vec2 to_seed(const Fan& f, const TropPoint& p) {
    if (p.is_zero()) return Vec2(0, 0);
    auto m = seed_rays(f);
    int i = f.mod(p.sector);
    return m[i].vec() * p.a + m[f.mod(i + 1)].vec() * p.b;
}

TropPoint to_canonical(const Fan& f, const Vec2& X) {
    if (X.is_zero()) return {0, 0, 0};
    auto m = seed_rays(f);
    int n = f.n();
    for (int i = 0; i < n; ++i) {
        Vec2 a = m[i].vec(), b = m[(i + 1) % n].vec();
        if (swedge(a, X) >= 0 && swedge(X, b) > 0) return normalize(f, {i, wedge(X, b), wedge(a, X)});
    }
    throw std::logic_error("seed fan does not cover the plane");
}

}  // namespace looij
