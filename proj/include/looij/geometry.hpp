#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "looij/fan.hpp"

namespace looij {

// A point of the universal cover: lifted sector j and its developed position.
// Convention: X lies in [r_j, r_{j+1}) (on r_j counts as sector j).
struct Lifted {
    long j = 0;
    Vec2 X;
};

// Lazily developed rays r_j, j in Z, with r_0=(1,0), r_1=(0,1) and
// r_{j+1} = -r_{j-1} - d_j r_j. With seed=true the seed self-intersections
// D^2 + b are used instead, which gives the toric model's fan.
// Not thread safe (the ray cache grows on demand).
class Developer {
public:
    explicit Developer(const Fan& f, bool seed = false);

    const Fan& fan() const { return *f_; }
    int n() const { return n_; }
    const Vec2& r(long j) const;
    Vec2 at(long j, const Q& a, const Q& b) const { return r(j) * a + r(j + 1) * b; }
    Lifted lift(const TropPoint& p, long turn = 0) const;
    // sector coordinates (alpha, beta) of X in lifted sector j
    std::pair<Q, Q> coords(long j, const Vec2& X) const;
    bool in_sector(long j, const Vec2& X) const;
    TropPoint point(const Lifted& L) const;
    // first lifted sector >= lo containing the direction X
    long sector_from(const Vec2& X, long lo) const;
    // last lifted sector <= hi containing X
    long sector_upto(const Vec2& X, long hi) const;
    Mat2 M() const;  // r_{j+n} = M r_j

private:
    const Fan* f_;
    int n_;
    std::vector<long> d_;
    mutable std::deque<Vec2> pos_, neg_;  // r_j for j>=0, r_{-1-k} at neg_[k]
};

// cumulative angular comparison in the universal cover; -1, 0, +1
int cum_cmp(const Developer& dev, const Lifted& A, const Lifted& B);
// for cum(A) <= cum(B): is the angle from A to B strictly less than pi
bool within_pi(const Developer& dev, const Lifted& A, const Lifted& B);

struct DevelopedFrame {
    int cut = 0;
    std::vector<Vec2> rays;   // r_{-sheets*n} .. r_{sheets*n + 1}, re-anchored so the cut ray is (1,0)
    long first = 0;           // index of rays[0]
    int sheets = 1;
};
DevelopedFrame develop(const Fan& f, int cut, int sheets);

struct Crossing {
    long j;        // lifted ray index
    int ray;       // j mod n
    Vec2 point;    // developed crossing point
    Q t;           // line parameter
};

struct LineTrace {
    TropPoint q;
    Q d;
    Vec2 Q0, P0;           // L(t) = P0 + t Q0, developed with q at turn 0
    long k0 = 0;           // lifted sector of q
    std::vector<Crossing> crossings;  // in order of increasing t
    long wraps = 0;
    bool self_parallel = false;
    Lifted end_plus, end_minus;       // L(+inf), L(-inf) as directions
    TropPoint plus, minus;
    bool self_intersects = false;
    Q t1, t2;                          // parameters of the self intersection, t1 < t2
    std::vector<TropPoint> zero_boundary;
    bool bounded = false;
    TropPoint V_plus, V_minus, b_q;
    long low_j = 0, high_j = 0;        // lifted sectors spanned by the window
};

bool is_positive_cached(const Fan& f);
void require_positive(const Fan& f);

LineTrace trace_line(const Fan& f, const Developer& dev, const TropPoint& q, const Q& d);
LineTrace trace_line(const Fan& f, const TropPoint& q, const Q& d);

// sum of lifts lying in a common convex cone; nullopt if they do not
std::optional<Lifted> add_lifted(const Developer& dev, const std::vector<Lifted>& pts);
std::optional<TropPoint> add_in_cone(const Fan& f, const std::vector<TropPoint>& pts,
                                     const std::vector<long>& turns = {});

}  // namespace looij

namespace looij {

// A smooth refinement of a fan containing a set of directions, with maps
// between points of the base fan and of the refined fan. inserted[i] holds
// the new primitive directions strictly inside base sector i, in sector
// coordinates (a, b), sorted counterclockwise.
struct Refinement {
    Fan base, fan;
    std::vector<std::vector<std::pair<Z, Z>>> inserted;
    std::vector<int> start;  // refined index of base ray i

    TropPoint map(const TropPoint& p) const;    // base -> refined
    TropPoint unmap(const TropPoint& p) const;  // refined -> base
};
Refinement identity_refinement(const Fan& f);
Refinement refine_all(const Fan& f, const std::vector<TropPoint>& dirs);

}  // namespace looij
