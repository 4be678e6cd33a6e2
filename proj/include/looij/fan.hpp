#pragma once

#include <optional>
#include <string>
#include <vector>

#include "looij/rational.hpp"

namespace looij {

struct RaySpec {
    long self_int = 0;
    long blowups = 0;
    std::string label;
};

// Cyclic ray data, counterclockwise, 0-indexed internally.
struct Fan {
    std::vector<RaySpec> rays;

    int n() const { return int(rays.size()); }
    long d(long i) const { return rays[mod(i)].self_int; }        // D_i^2
    long b(long i) const { return rays[mod(i)].blowups; }
    long dbar(long i) const { return d(i) + b(i); }               // self-int in the seed
    int mod(long i) const {
        long m = i % n();
        return int(m < 0 ? m + n() : m);
    }
    long total_blowups() const;
    bool toric() const { return total_blowups() == 0; }
    bool operator==(const Fan& o) const;
};

// A point a*v_i + b*v_{i+1} of the tropical plane. Zero is (0,0,0).
struct TropPoint {
    int sector = 0;
    Q a, b;

    TropPoint() = default;
    TropPoint(int s, Q x, Q y) : sector(s), a(std::move(x)), b(std::move(y)) {}

    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    bool integral() const { return is_integer(a) && is_integer(b); }
    bool operator==(const TropPoint& o) const { return sector == o.sector && a == o.a && b == o.b; }
    bool operator!=(const TropPoint& o) const { return !(*this == o); }
    bool operator<(const TropPoint& o) const {
        if (sector != o.sector) return sector < o.sector;
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
    TropPoint scaled(const Q& c) const;
    Z index() const;  // gcd content, integral points only
    TropPoint primitive() const;
};

// brings a,b>=0 into canonical form; throws on negative coordinates
TropPoint normalize(const Fan& f, TropPoint p);
inline TropPoint ray_point(const Fan& f, int i) { return normalize(f, {f.mod(i), 1, 0}); }

Fan build_fan(std::vector<RaySpec> rays);

struct Refined {
    Fan fan;
    int index;
    std::vector<int> old_to_new;  // position of each original ray
};
Refined refine_to_contain(const Fan& f, const TropPoint& w);

std::vector<std::vector<long>> intersection_matrix(const Fan& f);
Mat2 monodromy(const Fan& f);

struct Positivity {
    bool positive = false;
    std::vector<Q> witness;
};
Positivity is_positive(const Fan& f);

// Exact Fourier-Motzkin feasibility for A x >= c. Returns a point if feasible.
std::optional<std::vector<Q>> fm_feasible(std::vector<std::vector<Q>> A, std::vector<Q> c);

// mirror fan: reversed orientation; point map R
Fan mirror(const Fan& f);
TropPoint mirror_point(const Fan& f, const TropPoint& p);

}  // namespace looij
