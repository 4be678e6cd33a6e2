#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace looij {

using Q = mpq_class;
using Z = mpz_class;

// thrown for inputs that are well formed but mathematically out of range
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    Q x, y;
    Vec2() = default;
    Vec2(Q a, Q b) : x(std::move(a)), y(std::move(b)) { x.canonicalize(); y.canonicalize(); }
    Vec2(long a, long b) : x(a), y(b) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(const Q& s) const { return {x * s, y * s}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
    bool operator<(const Vec2& o) const { return x != o.x ? x < o.x : y < o.y; }
    bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
};

inline Vec2 operator*(const Q& s, const Vec2& v) { return v * s; }

inline Q wedge(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline int swedge(const Vec2& a, const Vec2& b) { return sgn(Q(wedge(a, b))); }
inline Q dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// 2x2 rational matrix, row major
struct Mat2 {
    Q a, b, c, d;
    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator*(const Mat2& m) const {
        return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
    }
    bool operator==(const Mat2& m) const { return a == m.a && b == m.b && c == m.c && d == m.d; }
    Q det() const { return a * d - b * c; }
    Mat2 inverse() const {
        Q dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    static Mat2 identity() { return {1, 0, 0, 1}; }
};

// half plane index used for angular sorting: 0 for angle in [0, pi), 1 otherwise
inline int half(const Vec2& v) { return (sgn(v.y) > 0 || (sgn(v.y) == 0 && sgn(v.x) > 0)) ? 0 : 1; }

// strict angular order on nonzero vectors, angle measured in [0, 2pi)
inline bool angle_less(const Vec2& a, const Vec2& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return swedge(a, b) > 0;
}

inline bool same_direction(const Vec2& a, const Vec2& b) { return swedge(a, b) == 0 && sgn(Q(dot(a, b))) > 0; }

inline bool is_integer(const Q& q) { return q.get_den() == 1; }

std::string q_to_string(const Q& q);
Q q_from_string(const std::string& s);  // accepts "p" or "p/q"; rejects floats

inline Z zgcd(const Z& a, const Z& b) {
    Z g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

}  // namespace looij
