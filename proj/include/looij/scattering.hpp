#pragma once

#include <vector>

#include "looij/geometry.hpp"
#include "looij/series.hpp"

namespace looij {

// A wall on the ray R_{>=0} dir (outgoing) or on the full line R dir (an
// initial wall). Function terms have exponents that are negative multiples of
// dir: for initial walls dir = -m_i and the function is a product of
// (1 + t_ij z^{m_i}).
struct Wall {
    IV dir;
    Series fn;
    bool incoming = false;
};

struct Diagram {
    int order = 0;
    int s = 0;                  // number of class variables
    std::vector<IV> m;          // seed images of the rays v_i
    std::vector<long> b;        // blowups per ray
    std::vector<int> cls_base;  // index of t_{i1}
    std::vector<Wall> walls;
};

// Seed rays m_i of the toric model. Throws unless they form a complete fan
// winding once.
std::vector<IV> seed_rays(const Fan& f);

// One class variable per blowup. With aggregate, t_{ij} := t_i (a ring map
// that keeps consistency and is used where only t = 1 values matter).
Diagram initial_diagram(const Fan& f, int order, bool aggregate = false);

// m * f^e with e = <n, r_*(m)> and n the primitive conormal of dir positive
// on from_side. Works term by term on a series.
Series wall_cross(const Series& g, const IV& dir, const Series& f, const IV& from_side, int K);

// A ray of the path-ordered product: everything sitting on R_{>=0} u.
struct LoopRay {
    IV u;
    Series F;
    mutable std::map<long, Series> pw;
    const Series& power(long e, int K) const;
    Series cross(const Series& g, int sign, int K) const;  // sign +1 = counterclockwise
};
std::vector<LoopRay> loop_rays(const Diagram& d, int K);
// counterclockwise product starting just clockwise of (1,0)
Series path_product(const std::vector<LoopRay>& rays, const Series& g, int K);

Diagram make_consistent(const Diagram& d, int K);
bool is_consistent(const Diagram& d, int K);

// memoized make_consistent(initial_diagram(f, K), K)
const Diagram& consistent_diagram(const Fan& f, int K, bool aggregate = false);

// product of all functions on ray u, with the exponents of incoming halves
// (those pointing along +u) reflected to -u
Series ray_function(const Diagram& d, const IV& u, int K);
// coefficient of z^{-u} at t = 1
long ray_multiplicity(const Diagram& d, const IV& u, int K);

struct ClusterWall {
    IV seed_dir;
    TropPoint ray;  // canonical primitive point on the wall
    long mult = 0;
};
// walls of the consistent diagram strictly inside the counterclockwise
// sector from lo to hi (seed directions; angle < 2pi), stabilized in order
std::vector<ClusterWall> cluster_walls(const Fan& f, const Vec2& lo, const Vec2& hi, int max_order = 12);

// Canonical <-> seed chart. Sector i of the canonical fan goes linearly onto
// the seed cone spanned by m_i, m_{i+1}.
Vec2 to_seed(const Fan& f, const TropPoint& p);
TropPoint to_canonical(const Fan& f, const Vec2& X);

}  // namespace looij
