#pragma once

#include <optional>
#include <string>
#include <vector>

#include "looij/pairing.hpp"
#include "looij/theta.hpp"

namespace looij {

// {x : <x, v> >= a}. The normal v is a point of the mirror copy, which the
// pairing identifies with the fan's own plane.
struct Facet {
    TropPoint v;
    Q a;
    bool operator==(const Facet& o) const { return v == o.v && a == o.a; }
};

struct StrongPolytope {
    std::vector<Facet> facets;       // source of truth
    std::vector<TropPoint> vertices;  // minimal generating set (finite part if unbounded)
    bool bounded = true;
    bool contains_origin = false;
    std::vector<TropPoint> recession;  // unbounded directions, when not bounded
};

struct BoundaryDivisor {
    std::vector<std::pair<TropPoint, Q>> terms;  // primitive v_i with coefficient a_i
};

bool contains(const Fan& f, const StrongPolytope& P, const TropPoint& x);
// min over the polytope of <., v>, from the vertices (bounded only)
Q support(const Fan& f, const StrongPolytope& P, const TropPoint& v);
// the same value read off the facets by interpolating between neighbouring normals
Q implied_support(const Fan& f, const StrongPolytope& P, const TropPoint& v);
bool same_polytope(const Fan& f, const StrongPolytope& A, const StrongPolytope& B);

// support function v -> min_{q in pts} <q, v> as a tropical function
TropicalFunction support_function(const Fan& f, const std::vector<TropPoint>& pts);

StrongPolytope strong_hull(const Fan& f, const std::vector<TropPoint>& pts);
// the set cut out by the given facets; vertices computed chart by chart
StrongPolytope from_facets(const Fan& f, const std::vector<Facet>& facets);

// The polar of a set in the plane of f lies in the mirror; it is returned as a
// polytope on mirror(f), in that fan's coordinates. Polar twice comes back to f.
StrongPolytope polar(const Fan& f, const std::vector<TropPoint>& pts);
StrongPolytope polar(const Fan& f, const StrongPolytope& P);

StrongPolytope newton(const Fan& f, const ThetaElement& g);

enum class MinkowskiMethod { Definition, SeparatingRays, UniversalCover, PerSeed };
MinkowskiMethod minkowski_method(const std::string& name);
StrongPolytope minkowski(const Fan& f, const std::vector<StrongPolytope>& polys,
                         MinkowskiMethod m = MinkowskiMethod::SeparatingRays);

// all integral points, sorted; throws for unbounded polytopes
std::vector<TropPoint> lattice_points(const Fan& f, const StrongPolytope& P);

// the polytope cut into convex pieces, one per sector of a common refinement;
// each piece lists its corners in counterclockwise order (bounded only)
std::vector<std::vector<TropPoint>> pieces(const Fan& f, const StrongPolytope& P);

// no straight line wraps, checked on a fixed grid of directions
bool finite_type(const Fan& f);

// A toric model presented as a refinement of the fan with its own blowup counts.
struct Seed {
    Refinement ref;  // ref.fan carries the seed's blowups
};
std::vector<Seed> seeds(const Fan& f, size_t cap = 64);

struct EdgeReport {
    TropPoint v;
    Q coeff;
    long lattice_points = 0;  // on the face F_v
    long d = -1;              // lattice_points - 1
    Q WD;                     // W . D_v = (HW)_v
    bool meets_prev = false, meets_next = false;
    bool applicable = false;  // 1 <= d and at least two boundary components
    bool inequality = false;  // WD >= d
    bool equality = false;    // WD == d
    bool consistent = false;  // equality iff both neighbouring faces meet
};

struct SectionsReport {
    StrongPolytope polytope;
    std::vector<TropPoint> points;
    long dimension = 0;
    std::vector<EdgeReport> edges;  // one per boundary component of the compactification
    Q self_intersection;           // W . W
    bool effective = false;
    bool d_ample = false;
};
SectionsReport sections(const Fan& f, const BoundaryDivisor& W);

}  // namespace looij
