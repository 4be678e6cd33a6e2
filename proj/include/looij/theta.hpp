#pragma once

#include <map>
#include <string>
#include <vector>

#include "looij/pairing.hpp"
#include "looij/scattering.hpp"

namespace looij {

struct Segment {
    Vec2 start;  // where the segment begins (unused for the first, which comes from infinity)
    IV m;        // exponent; the segment travels in direction -m
    Cls cls = 0;
    Q coeff = 1;
    IV wall;     // wall bent at when entering this segment (zero for the first)
};

struct BrokenLine {
    TropPoint q;
    Vec2 endpoint;
    std::vector<Segment> segs;  // forward order
    const Segment& last() const { return segs.back(); }
    int bends() const;
};

// Class polynomials are Series whose z exponent is zero.
using ClassPoly = Series;

struct ThetaElement {
    std::map<TropPoint, ClassPoly> terms;
    int order = 0;

    static ThetaElement theta(const TropPoint& q, int order);
    ThetaElement operator+(const ThetaElement& o) const;
    ThetaElement scaled(const ClassPoly& c) const;
    bool operator==(const ThetaElement& o) const { return terms == o.terms; }
};

struct Specialized {
    std::map<TropPoint, Q> terms;
    bool truncation_sensitive = false;  // some coefficient reaches the truncation order
};

// Broken lines and expansions over the consistent diagram of a fan at order K.
// Caches are per engine; an engine is not shared across threads.
class ThetaEngine {
public:
    ThetaEngine(const Fan& f, int K);

    const Fan& fan() const { return f_; }
    int order() const { return K_; }
    const Diagram& diagram() const { return *d_; }
    const std::vector<LoopRay>& rays() const { return rays_; }

    IV seed(const TropPoint& q) const;  // integral seed image
    TropPoint canonical(const IV& m) const;

    // generic endpoint infinitely near the seed direction dir, on its
    // clockwise (side = -1) or counterclockwise (side = +1) side
    Vec2 endpoint_near(const IV& dir, int side) const;
    // generic endpoint in the chamber just counterclockwise of m_sector
    Vec2 endpoint_in_sector(int sector) const;
    bool on_wall(const Vec2& Q) const;

    std::vector<BrokenLine> broken_lines(const TropPoint& q, const Vec2& Q) const;
    Series expand(const TropPoint& q, const Vec2& Q) const;
    Series expand(const ThetaElement& f, const Vec2& Q) const;

    // alpha_{q1 q2}^q from pairs of broken lines ending infinitely near rho_q
    ClassPoly structure_constant(const TropPoint& q1, const TropPoint& q2, const TropPoint& q, int side = -1) const;
    ThetaElement multiply(const ThetaElement& a, const ThetaElement& b) const;
    ThetaElement to_theta_basis(const Series& g, const Vec2& Q) const;

    ClassPoly trace0(const ThetaElement& f) const;
    ClassPoly trace(const ThetaElement& f, const TropPoint& r) const;  // Tr_r

private:
    Fan f_;
    int K_;
    const Diagram* d_;
    std::vector<LoopRay> rays_;
    std::vector<IV> m_;
    std::vector<int> var_ray_;
    mutable std::map<std::pair<TropPoint, std::pair<std::string, std::string>>, Series> cache_;
};

Specialized specialize(const ThetaElement& f, const std::vector<Q>& values = {});
Q specialize(const ClassPoly& c, const std::vector<Q>& values = {});

}  // namespace looij
