#include "looij/series.hpp"

#include <cstdlib>

namespace looij {

long igcd(long a, long b) {
    a = std::labs(a);
    b = std::labs(b);
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

IV primitive(const IV& v) {
    long g = igcd(v.x, v.y);
    return g == 0 ? v : IV{v.x / g, v.y / g};
}

bool iangle_less(const IV& a, const IV& b) { return angle_less(a.vec(), b.vec()); }

int cls_order(Cls c) {
    int s = 0;
    for (; c; c >>= 4) s += int(c & 15);
    return s;
}
int cls_get(Cls c, int i) { return int((c >> (4 * i)) & 15); }
Cls cls_unit(int i) { return Cls(1) << (4 * i); }
std::vector<int> cls_unpack(Cls c, int s) {
    std::vector<int> e(s);
    for (int i = 0; i < s; ++i) e[i] = cls_get(c, i);
    return e;
}
Cls cls_pack(const std::vector<int>& e) {
    if (int(e.size()) > kMaxClassVars) throw DomainError("too many class variables");
    Cls c = 0;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0 || e[i] > kMaxOrder) throw DomainError("class exponent out of range");
        c |= Cls(e[i]) << (4 * i);
    }
    return c;
}
bool cls_divides(Cls a, Cls b) {
    for (int i = 0; i < kMaxClassVars; ++i)
        if (cls_get(a, i) > cls_get(b, i)) return false;
    return true;
}

Series Series::mono(IV m, Cls c, const Q& coeff) {
    Series s;
    s.add({m, c}, coeff);
    return s;
}

void Series::add(const Key& k, const Q& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (sgn(it->second) == 0) terms.erase(it);
    }
}

Series& Series::operator+=(const Series& o) {
    for (auto& [k, c] : o.terms) add(k, c);
    return *this;
}

Series& Series::operator-=(const Series& o) {
    for (auto& [k, c] : o.terms) add(k, -c);
    return *this;
}

Series Series::scaled(const Q& c) const {
    Series r;
    if (sgn(c) == 0) return r;
    for (auto& [k, v] : terms) r.terms.emplace(k, v * c);
    return r;
}

Series Series::shifted(IV m, Cls c) const {
    Series r;
    for (auto& [k, v] : terms) r.terms.emplace(Key{k.m + m, k.cls + c}, v);
    return r;
}

Series Series::mul(const Series& o, int K) const {
    Series r;
    // bucket the right factor by order so pairs over K are skipped early
    std::vector<std::vector<std::pair<const Key*, const Q*>>> byord(K + 1);
    for (auto& [k, v] : o.terms) {
        int d = cls_order(k.cls);
        if (d <= K) byord[d].push_back({&k, &v});
    }
    for (auto& [k, v] : terms) {
        int d = cls_order(k.cls);
        for (int e = 0; d + e <= K; ++e)
            for (auto& [k2, v2] : byord[e]) r.add({k.m + k2->m, k.cls + k2->cls}, v * *v2);
    }
    return r;
}

Series Series::truncated(int K) const {
    Series r;
    for (auto& [k, v] : terms)
        if (cls_order(k.cls) <= K) r.terms.emplace(k, v);
    return r;
}

Series Series::order_part(int j) const {
    Series r;
    for (auto& [k, v] : terms)
        if (cls_order(k.cls) == j) r.terms.emplace(k, v);
    return r;
}

Series Series::inverse(int K) const {
    Series g = *this;
    g.add({{0, 0}, 0}, -1);
    if (g.min_order() < 1) throw DomainError("series is not a unit");
    Series neg = g.scaled(-1), acc = one(), pw = one();
    for (int k = 1; k <= K; ++k) {
        pw = pw.mul(neg, K);
        if (pw.empty()) break;
        acc += pw;
    }
    return acc;
}

Series Series::pow(long e, int K) const {
    Series base = e < 0 ? inverse(K) : truncated(K);
    long n = std::labs(e);
    Series r = one();
    while (n) {
        if (n & 1) r = r.mul(base, K);
        n >>= 1;
        if (n) base = base.mul(base, K);
    }
    return r;
}

int Series::min_order() const {
    int m = 1 << 20;
    for (auto& [k, v] : terms) m = std::min(m, cls_order(k.cls));
    return m;
}

Q Series::coeff(const Key& k) const {
    auto it = terms.find(k);
    return it == terms.end() ? Q(0) : it->second;
}

Series Series::specialized() const {
    Series r;
    for (auto& [k, v] : terms) r.add({k.m, 0}, v);
    return r;
}

}  // namespace looij
