#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "looij/rational.hpp"

namespace looij {

// Integer lattice vector (seed chart exponents and directions).
struct IV {
    long x = 0, y = 0;
    IV operator+(const IV& o) const { return {x + o.x, y + o.y}; }
    IV operator-(const IV& o) const { return {x - o.x, y - o.y}; }
    IV operator-() const { return {-x, -y}; }
    IV operator*(long k) const { return {x * k, y * k}; }
    bool operator==(const IV& o) const { return x == o.x && y == o.y; }
    bool operator!=(const IV& o) const { return !(*this == o); }
    bool operator<(const IV& o) const { return x != o.x ? x < o.x : y < o.y; }
    bool zero() const { return x == 0 && y == 0; }
    Vec2 vec() const { return Vec2(x, y); }
};
inline long iwedge(const IV& a, const IV& b) { return a.x * b.y - a.y * b.x; }
long igcd(long a, long b);
IV primitive(const IV& v);
bool iangle_less(const IV& a, const IV& b);  // angle in [0, 2pi)

// Exponents of the class variables t_1..t_s packed four bits each (s <= 16,
// every exponent <= 15). Sums of packed values never carry while the total
// order stays <= 15, which the truncation guarantees.
using Cls = std::uint64_t;
constexpr int kMaxClassVars = 16;
constexpr int kMaxOrder = 15;
int cls_order(Cls c);
int cls_get(Cls c, int i);
Cls cls_unit(int i);
std::vector<int> cls_unpack(Cls c, int s);
Cls cls_pack(const std::vector<int>& e);
bool cls_divides(Cls a, Cls b);

struct Key {
    IV m;
    Cls cls = 0;
    bool operator<(const Key& o) const { return m != o.m ? m < o.m : cls < o.cls; }
    bool operator==(const Key& o) const { return m == o.m && cls == o.cls; }
};

// Laurent series in z with polynomial coefficients in the class variables,
// truncated at class order <= K.
class Series {
public:
    std::map<Key, Q> terms;

    static Series one() { return mono({0, 0}, 0, 1); }
    static Series mono(IV m, Cls c, const Q& coeff);
    bool empty() const { return terms.empty(); }
    void add(const Key& k, const Q& c);
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series operator+(const Series& o) const { Series r = *this; return r += o; }
    Series operator-(const Series& o) const { Series r = *this; return r -= o; }
    Series scaled(const Q& c) const;
    Series shifted(IV m, Cls c) const;  // multiply by z^m t^c
    Series mul(const Series& o, int K) const;
    Series truncated(int K) const;
    Series order_part(int j) const;
    Series inverse(int K) const;  // requires constant term 1 at class order 0
    Series pow(long e, int K) const;
    int min_order() const;
    Q coeff(const Key& k) const;
    bool operator==(const Series& o) const { return terms == o.terms; }
    Series specialized() const;  // t := 1, collected by z exponent (cls = 0)
};

}  // namespace looij
