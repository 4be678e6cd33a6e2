#include "looij/fan.hpp"

#include <algorithm>
#include <set>

namespace looij {

std::string q_to_string(const Q& q) { return q.get_str(); }

Q q_from_string(const std::string& s) {
    auto bad = [&] { return std::invalid_argument("not a rational: \"" + s + "\""); };
    if (s.empty()) throw bad();
    size_t slash = s.find('/');
    auto digits_ok = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        size_t k = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) k = 1;
        if (k == t.size()) return false;
        return std::all_of(t.begin() + k, t.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string num = s.substr(0, slash), den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
    Z p(num[0] == '+' ? num.substr(1) : num), d(den);
    if (d == 0) throw bad();
    Q r(p, d);
    r.canonicalize();
    return r;
}

long Fan::total_blowups() const {
    long s = 0;
    for (auto& r : rays) s += r.blowups;
    return s;
}

bool Fan::operator==(const Fan& o) const {
    if (n() != o.n()) return false;
    for (int i = 0; i < n(); ++i)
        if (rays[i].self_int != o.rays[i].self_int || rays[i].blowups != o.rays[i].blowups) return false;
    return true;
}

TropPoint TropPoint::scaled(const Q& c) const { return {sector, a * c, b * c}; }

Z TropPoint::index() const {
    if (!integral()) throw DomainError("index of a non-integral point");
    return zgcd(a.get_num(), b.get_num());
}

TropPoint TropPoint::primitive() const {
    if (is_zero()) return *this;
    // a and b rational: scale to coprime integers
    Z l;
    mpz_lcm(l.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    Q x = a * l, y = b * l;
    Z g = zgcd(x.get_num(), y.get_num());
    return {sector, x / g, y / g};
}

TropPoint normalize(const Fan& f, TropPoint p) {
    if (sgn(p.a) < 0 || sgn(p.b) < 0) throw DomainError("negative sector coordinate");
    p.sector = f.mod(p.sector);
    if (p.is_zero()) return {0, 0, 0};
    if (sgn(p.a) == 0) return {f.mod(p.sector + 1), p.b, 0};
    return p;
}

Fan build_fan(std::vector<RaySpec> rays) {
    if (rays.empty()) throw DomainError("empty ray list");
    std::set<std::string> seen;
    for (auto& r : rays) {
        if (r.blowups < 0) throw DomainError("negative blowup count");
        if (!r.label.empty() && !seen.insert(r.label).second) throw DomainError("duplicate label " + r.label);
    }
    while (rays.size() < 3) {
        // corner blowup between the last ray and the first
        rays.back().self_int -= 1;
        rays.front().self_int -= 1;
        rays.push_back({-1, 0, ""});
    }
    return {rays};
}

Refined refine_to_contain(const Fan& f, const TropPoint& w0) {
    if (w0.is_zero()) throw DomainError("cannot refine toward the origin");
    if (!w0.integral()) throw DomainError("refinement direction must be integral");
    TropPoint w = normalize(f, w0).primitive();
    Refined r{f, 0, {}};
    for (int i = 0; i < f.n(); ++i) r.old_to_new.push_back(i);
    while (true) {
        w = normalize(r.fan, w);
        if (sgn(w.b) == 0) {
            r.index = w.sector;
            return r;
        }
        int i = w.sector, pos = i + 1;
        auto& rays = r.fan.rays;
        rays[i].self_int -= 1;
        rays[r.fan.mod(i + 1)].self_int -= 1;
        rays.insert(rays.begin() + pos, RaySpec{-1, 0, ""});
        for (auto& k : r.old_to_new)
            if (k >= pos) ++k;
        if (w.a >= w.b)
            w = {i, w.a - w.b, w.b};
        else
            w = {pos, w.a, w.b - w.a};
    }
}

std::vector<std::vector<long>> intersection_matrix(const Fan& f) {
    int n = f.n();
    std::vector<std::vector<long>> H(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) {
        H[i][i] = f.d(i);
        H[i][f.mod(i + 1)] = 1;
        H[i][f.mod(i - 1)] = 1;
    }
    return H;
}

Mat2 monodromy(const Fan& f) {
    Mat2 mu = Mat2::identity();
    for (int k = 1; k <= f.n(); ++k) {
        Mat2 T{Q(-f.d(k)), 1, -1, 0};
        mu = T * mu;
    }
    return mu;
}

std::optional<std::vector<Q>> fm_feasible(std::vector<std::vector<Q>> A, std::vector<Q> c) {
    size_t nv = A.empty() ? 0 : A[0].size();
    // stages[k] holds the system before eliminating variable k (variables eliminated from the last)
    std::vector<std::pair<std::vector<std::vector<Q>>, std::vector<Q>>> stages;
    for (size_t k = nv; k-- > 0;) {
        stages.push_back({A, c});
        std::vector<size_t> pos, neg, zero;
        for (size_t r = 0; r < A.size(); ++r) {
            int s = sgn(A[r][k]);
            (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
        }
        std::vector<std::vector<Q>> A2;
        std::vector<Q> c2;
        std::set<std::pair<std::vector<Q>, Q>> dedup;
        auto push = [&](std::vector<Q> row, Q rhs) {
            // scale so the first nonzero entry has absolute value 1
            for (auto& x : row)
                if (sgn(x) != 0) {
                    Q s = abs(x);
                    for (auto& y : row) y /= s;
                    rhs /= s;
                    break;
                }
            if (dedup.insert({row, rhs}).second) {
                A2.push_back(row);
                c2.push_back(rhs);
            }
        };
        for (auto r : zero) push(A[r], c[r]);
        for (auto p : pos)
            for (auto q : neg) {
                Q sp = A[p][k], sq = -A[q][k];
                std::vector<Q> row(nv);
                for (size_t j = 0; j < nv; ++j) row[j] = A[p][j] * sq + A[q][j] * sp;
                push(row, c[p] * sq + c[q] * sp);
            }
        A = std::move(A2);
        c = std::move(c2);
    }
    for (size_t r = 0; r < A.size(); ++r)
        if (sgn(c[r]) > 0) return std::nullopt;
    std::vector<Q> x(nv, 0);
    for (size_t k = 0; k < nv; ++k) {
        auto& [Ak, ck] = stages[nv - 1 - k];
        std::optional<Q> lo, hi;
        for (size_t r = 0; r < Ak.size(); ++r) {
            if (sgn(Ak[r][k]) == 0) continue;
            Q rest = ck[r];
            for (size_t j = 0; j < k; ++j) rest -= Ak[r][j] * x[j];
            Q bound = rest / Ak[r][k];
            if (sgn(Ak[r][k]) > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else if (!hi || bound < *hi) {
                hi = bound;
            }
        }
        if (lo)
            x[k] = *lo;
        else if (hi)
            x[k] = std::min(*hi, Q(0));
    }
    return x;
}

Positivity is_positive(const Fan& f) {
    int n = f.n();
    auto H = intersection_matrix(f);
    std::vector<std::vector<Q>> A;
    std::vector<Q> c;
    for (int i = 0; i < n; ++i) {
        std::vector<Q> row(n, 0);
        row[i] = 1;
        A.push_back(row);
        c.push_back(0);
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Q> row(n);
        for (int j = 0; j < n; ++j) row[j] = H[i][j];
        A.push_back(row);
        c.push_back(1);
    }
    auto x = fm_feasible(A, c);
    if (!x) return {false, {}};
    return {true, *x};
}

Fan mirror(const Fan& f) {
    Fan m = f;
    std::reverse(m.rays.begin(), m.rays.end());
    return m;
}

TropPoint mirror_point(const Fan& f, const TropPoint& p) {
    if (p.is_zero()) return p;
    int n = f.n();
    return normalize(f, {f.mod(n - 2 - p.sector), p.b, p.a});
}

}  // namespace looij
