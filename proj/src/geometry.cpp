#include "looij/geometry.hpp"
#include "looij/scattering.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace looij {

Developer::Developer(const Fan& f, bool seed) : f_(&f), n_(f.n()) {
    for (int i = 0; i < n_; ++i) d_.push_back(seed ? f.dbar(i) : f.d(i));
    pos_ = {Vec2(1, 0), Vec2(0, 1)};
}

const Vec2& Developer::r(long j) const {
    if (j >= 0) {
        while (long(pos_.size()) <= j) {
            long k = long(pos_.size()) - 1;  // r_{k+1} = -r_{k-1} - d_k r_k
            pos_.push_back(-pos_[k - 1] - pos_[k] * Q(d_[f_->mod(k)]));
        }
        return pos_[j];
    }
    long need = -j;  // neg_[need-1] is r_j
    while (long(neg_.size()) < need) {
        long k = -long(neg_.size());  // build r_{k-1} = -r_{k+1} - d_k r_k
        const Vec2 rk = k == 0 ? pos_[0] : neg_[-k - 1];
        const Vec2 rk1 = k == 0 ? pos_[1] : (k == -1 ? pos_[0] : neg_[-k - 2]);
        neg_.push_back(-rk1 - rk * Q(d_[f_->mod(k)]));
    }
    return neg_[need - 1];
}

Lifted Developer::lift(const TropPoint& p, long turn) const {
    long j = p.sector + turn * n_;
    return {j, at(j, p.a, p.b)};
}

std::pair<Q, Q> Developer::coords(long j, const Vec2& X) const { return {wedge(X, r(j + 1)), wedge(r(j), X)}; }

bool Developer::in_sector(long j, const Vec2& X) const {
    return sgn(Q(wedge(X, r(j + 1)))) > 0 && sgn(Q(wedge(r(j), X))) >= 0;
}

TropPoint Developer::point(const Lifted& L) const {
    if (L.X.is_zero()) return {0, 0, 0};
    auto [a, b] = coords(L.j, L.X);
    return normalize(*f_, {f_->mod(L.j), a, b});
}

long Developer::sector_from(const Vec2& X, long lo) const {
    if (X.is_zero()) throw DomainError("zero vector has no sector");
    for (long j = lo, cap = lo + 4000L * n_ + 64; j < cap; ++j)
        if (in_sector(j, X)) return j;
    throw DomainError("developing map did not reach direction (fan not positive?)");
}

long Developer::sector_upto(const Vec2& X, long hi) const {
    if (X.is_zero()) throw DomainError("zero vector has no sector");
    for (long j = hi, cap = hi - 4000L * n_ - 64; j > cap; --j)
        if (in_sector(j, X)) return j;
    throw DomainError("developing map did not reach direction (fan not positive?)");
}

Mat2 Developer::M() const {
    const Vec2 &a = r(n_), &b = r(n_ + 1);
    return {a.x, b.x, a.y, b.y};
}

int cum_cmp(const Developer&, const Lifted& A, const Lifted& B) {
    if (A.j != B.j) return A.j < B.j ? -1 : 1;
    int s = swedge(A.X, B.X);
    return s > 0 ? -1 : (s < 0 ? 1 : 0);
}

bool within_pi(const Developer& dev, const Lifted& A, const Lifted& B) {
    if (A.j == B.j) return swedge(A.X, B.X) >= 0;
    if (A.j > B.j) return false;
    for (long j = A.j + 1; j <= B.j; ++j)
        if (swedge(A.X, dev.r(j)) <= 0) return false;
    return swedge(A.X, B.X) > 0;
}

DevelopedFrame develop(const Fan& f, int cut, int sheets) {
    if (sheets < 1) throw DomainError("sheets must be positive");
    Fan rot = f;
    int c = f.mod(cut);
    std::rotate(rot.rays.begin(), rot.rays.begin() + c, rot.rays.end());
    Developer dev(rot);
    DevelopedFrame fr{c, {}, -long(sheets) * f.n(), sheets};
    for (long j = fr.first; j <= long(sheets) * f.n() + 1; ++j) fr.rays.push_back(dev.r(j));
    return fr;
}

bool is_positive_cached(const Fan& f) {
    static std::mutex mu;
    static std::map<std::vector<long>, bool> cache;
    std::vector<long> key;
    for (auto& r : f.rays) key.push_back(r.self_int);
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    bool p = is_positive(f).positive;
    std::lock_guard<std::mutex> g(mu);
    cache[key] = p;
    return p;
}

// the blowup counts must describe a toric model, otherwise Case B has no seed to trace in
static void require_toric_model(const Fan& f) {
    static std::mutex mu;
    static std::map<std::vector<long>, bool> cache;
    std::vector<long> key;
    for (auto& r : f.rays) {
        key.push_back(r.self_int);
        key.push_back(r.blowups);
    }
    std::unique_lock<std::mutex> lk(mu);
    auto it = cache.find(key);
    bool ok;
    if (it != cache.end()) {
        ok = it->second;
    } else {
        lk.unlock();
        try {
            seed_rays(f);
            ok = true;
        } catch (const DomainError&) {
            ok = false;
        }
        lk.lock();
        cache[key] = ok;
    }
    if (!ok) throw DomainError("blowup data do not come from a toric model");
}

void require_positive(const Fan& f) {
    if (!is_positive_cached(f)) throw DomainError("fan not positive");
    require_toric_model(f);
}

namespace {

long sector_between(const Developer& dev, const Vec2& X, long lo, long hi) {
    for (long j = lo; j <= hi; ++j)
        if (dev.in_sector(j, X)) return j;
    return lo - 1;  // not found
}

}  // namespace

LineTrace trace_line(const Fan& f, const Developer& dev, const TropPoint& q0, const Q& d) {
    require_positive(f);
    if (q0.is_zero()) throw DomainError("line direction must be nonzero");
    LineTrace L;
    L.q = normalize(f, q0);
    L.d = d;
    Lifted ql = dev.lift(L.q);
    L.k0 = ql.j;
    L.Q0 = ql.X;
    const Vec2& Q0 = L.Q0;
    Q nq = dot(Q0, Q0);
    L.P0 = Vec2(Q0.y, -Q0.x) * (d / nq);
    const int n = f.n();
    bool ccw = sgn(d) <= 0;  // window lies counterclockwise of q for d <= 0
    auto add_cross = [&](long j) {
        const Vec2& U = dev.r(j);
        Q s = d / wedge(U, Q0);
        Vec2 p = U * s;
        L.crossings.push_back({j, f.mod(j), p, s * dot(U, Q0) / nq});
    };
    if (ccw) {
        long j = L.k0 + 1;
        for (; swedge(Q0, dev.r(j)) > 0; ++j)
            if (sgn(d) != 0) add_cross(j);
        long jl = j - 1;
        Vec2 E = -Q0;
        L.end_minus = {dev.in_sector(jl, E) ? jl : jl + 1, E};
        L.low_j = L.k0;
        L.high_j = L.end_minus.j;
    } else {
        long j = L.k0;
        if (same_direction(dev.r(j), Q0)) --j;
        for (; swedge(dev.r(j), Q0) > 0; --j) add_cross(j);
        L.end_minus = {j, -Q0};
        L.low_j = j;
        L.high_j = L.k0;
    }
    L.end_plus = ql;
    std::sort(L.crossings.begin(), L.crossings.end(), [](auto& a, auto& b) { return a.t < b.t; });
    L.plus = L.q;
    L.minus = dev.point(L.end_minus);

    // wraps: number of further lifts of q inside the closed window
    for (long m = 1; m < 64; ++m) {
        Lifted qm = dev.lift(L.q, ccw ? m : -m);
        int c = cum_cmp(dev, qm, L.end_minus);
        if (ccw ? c > 0 : c < 0) break;
        ++L.wraps;
        if (c == 0) L.self_parallel = true;
    }

    Mat2 M = dev.M();
    if (sgn(d) == 0) {
        L.zero_boundary = {L.minus, TropPoint{0, 0, 0}, L.plus};
        L.V_plus = L.plus;
        L.V_minus = L.minus;
    } else {
        // one-turn self intersection: L(tu) = M L(tl), tu on the upper sheet
        Vec2 MQ = M * Q0;
        Q det = -wedge(Q0, MQ);
        if (sgn(det) != 0) {
            Vec2 R = M * L.P0 - L.P0;
            Q tu = wedge(R, -MQ) / det, tl = wedge(Q0, R) / det;
            Vec2 Xu = L.P0 + Q0 * tu, Xl = L.P0 + Q0 * tl;
            long ju = sector_between(dev, Xu, L.low_j, L.high_j);
            long jl = sector_between(dev, Xl, L.low_j, L.high_j);
            bool order_ok = ccw ? tu < tl : tu > tl;
            if (ju >= L.low_j && jl >= L.low_j && ju == jl + n && order_ok) {
                L.self_intersects = true;
                L.t1 = ccw ? tu : tl;
                L.t2 = ccw ? tl : tu;
            }
        }
        Vec2 ends[2] = {L.P0 + Q0 * L.t1, L.P0 + Q0 * L.t2};
        if (L.self_intersects) {
            L.bounded = true;
            auto pt = [&](const Vec2& X) { return dev.point({sector_between(dev, X, L.low_j, L.high_j), X}); };
            L.zero_boundary.push_back(pt(ends[0]));
            for (auto& c : L.crossings)
                if (c.t > L.t1 && c.t < L.t2) L.zero_boundary.push_back(dev.point({c.j, c.point}));
            L.zero_boundary.push_back(pt(ends[1]));
        } else {
            L.zero_boundary.push_back(L.minus);
            for (auto& c : L.crossings) L.zero_boundary.push_back(dev.point({c.j, c.point}));
            L.zero_boundary.push_back(L.plus);
        }
        L.V_plus = L.plus;
        L.V_minus = L.minus;
    }

    // bend vector b_q = V_- + V_+ summed at the vertex: Q - mu(Q) in the frame of q
    Vec2 MinvQ = M.inverse() * Q0;
    Vec2 B = ccw ? Q0 - MinvQ : Q0 - M * Q0;
    if (B.is_zero()) {
        L.b_q = {0, 0, 0};
    } else {
        long j;
        if (L.self_intersects) {
            long jv = sector_between(dev, L.P0 + Q0 * L.t2, L.low_j, L.high_j);
            j = dev.sector_upto(B, jv + n);
            long j2 = dev.sector_from(B, jv - n);
            if (std::labs(j2 - jv) < std::labs(j - jv)) j = j2;
        } else {
            j = dev.sector_upto(B, L.k0);
        }
        L.b_q = dev.point({j, B});
    }
    return L;
}

LineTrace trace_line(const Fan& f, const TropPoint& q, const Q& d) {
    Developer dev(f);
    return trace_line(f, dev, q, d);
}

std::optional<Lifted> add_lifted(const Developer& dev, const std::vector<Lifted>& pts) {
    std::vector<Lifted> nz;
    for (auto& p : pts)
        if (!p.X.is_zero()) nz.push_back(p);
    if (nz.empty()) return Lifted{0, Vec2(0, 0)};
    auto lo = *std::min_element(nz.begin(), nz.end(), [&](auto& a, auto& b) { return cum_cmp(dev, a, b) < 0; });
    auto hi = *std::max_element(nz.begin(), nz.end(), [&](auto& a, auto& b) { return cum_cmp(dev, a, b) < 0; });
    if (!within_pi(dev, lo, hi)) return std::nullopt;
    Vec2 S(0, 0);
    for (auto& p : nz) S = S + p.X;
    for (long j = lo.j; j <= hi.j; ++j)
        if (dev.in_sector(j, S)) return Lifted{j, S};
    return std::nullopt;
}

std::optional<TropPoint> add_in_cone(const Fan& f, const std::vector<TropPoint>& pts, const std::vector<long>& turns) {
    Developer dev(f);
    std::vector<Lifted> L;
    for (size_t i = 0; i < pts.size(); ++i) L.push_back(dev.lift(normalize(f, pts[i]), i < turns.size() ? turns[i] : 0));
    auto s = add_lifted(dev, L);
    if (!s) return std::nullopt;
    return dev.point(*s);
}

}  // namespace looij

namespace looij {

namespace {

using Dir = std::pair<Z, Z>;

bool dir_less(const Dir& x, const Dir& y) { return x.second * y.first < y.second * x.first; }

// Stern-Brocot ancestors of the coprime direction (a, b), a, b > 0
void sb_path(Z a, Z b, std::vector<Dir>& out) {
    Dir lo{1, 0}, hi{0, 1};
    while (true) {
        Dir mid{lo.first + hi.first, lo.second + hi.second};
        out.push_back(mid);
        if (mid.first == a && mid.second == b) return;
        if (b * mid.first > mid.second * a)
            lo = mid;
        else
            hi = mid;
    }
}

std::vector<Dir> with_ends(const std::vector<Dir>& in) {
    std::vector<Dir> v{{1, 0}};
    v.insert(v.end(), in.begin(), in.end());
    v.push_back({0, 1});
    return v;
}

}  // namespace

Refinement identity_refinement(const Fan& f) { return refine_all(f, {}); }

Refinement refine_all(const Fan& f, const std::vector<TropPoint>& dirs) {
    int n = f.n();
    Refinement R;
    R.base = f;
    R.inserted.assign(n, {});
    for (auto& p0 : dirs) {
        if (p0.is_zero()) continue;
        TropPoint p = normalize(f, p0).primitive();
        if (sgn(p.b) == 0) continue;
        sb_path(p.a.get_num(), p.b.get_num(), R.inserted[p.sector]);
    }
    for (auto& v : R.inserted) {
        std::sort(v.begin(), v.end(), dir_less);
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    for (int i = 0; i < n; ++i) {
        R.start.push_back(int(R.fan.rays.size()));
        RaySpec old = f.rays[i];
        // new neighbours of v_i: (p, 1) in sector i and (1, p') in sector i-1
        long p = R.inserted[i].empty() ? 0 : R.inserted[i].front().first.get_si();
        long pp = R.inserted[f.mod(i - 1)].empty() ? 0 : R.inserted[f.mod(i - 1)].back().second.get_si();
        old.self_int -= p + pp;
        R.fan.rays.push_back(old);
        auto full = with_ends(R.inserted[i]);
        for (size_t k = 1; k + 1 < full.size(); ++k) {
            // u_{k-1} + u_{k+1} = -d u_k in the sector frame
            Z s1 = full[k - 1].first + full[k + 1].first, s2 = full[k - 1].second + full[k + 1].second;
            Z d = full[k].first != 0 ? Z(-s1 / full[k].first) : Z(-s2 / full[k].second);
            R.fan.rays.push_back({d.get_si(), 0, ""});
        }
    }
    return R;
}

TropPoint Refinement::map(const TropPoint& p0) const {
    if (p0.is_zero()) return {0, 0, 0};
    TropPoint p = normalize(base, p0);
    auto full = with_ends(inserted[p.sector]);
    for (size_t k = 0; k + 1 < full.size(); ++k) {
        Vec2 e1(full[k].first, full[k].second), e2(full[k + 1].first, full[k + 1].second), x(p.a, p.b);
        if (swedge(e1, x) >= 0 && swedge(x, e2) > 0)
            return normalize(fan, {start[p.sector] + int(k), wedge(x, e2), wedge(e1, x)});
    }
    throw std::logic_error("refinement map: point outside its sector");
}

TropPoint Refinement::unmap(const TropPoint& p0) const {
    if (p0.is_zero()) return {0, 0, 0};
    TropPoint p = normalize(fan, p0);
    int i = int(std::upper_bound(start.begin(), start.end(), p.sector) - start.begin()) - 1;
    auto full = with_ends(inserted[i]);
    size_t k = size_t(p.sector - start[i]);
    Q a = p.a * full[k].first + p.b * full[k + 1].first, b = p.a * full[k].second + p.b * full[k + 1].second;
    return normalize(base, {i, a, b});
}

}  // namespace looij
