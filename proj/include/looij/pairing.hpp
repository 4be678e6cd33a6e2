#pragma once

#include <functional>
#include <string>
#include <vector>

#include "looij/geometry.hpp"
#include "looij/scattering.hpp"

namespace looij {

// Linear on each sector of ref.fan; values at the refined rays.
struct TropicalFunction {
    Refinement ref;
    std::vector<Q> values;

    Q eval_fine(const TropPoint& p) const;  // p in refined coordinates
    Q eval(const TropPoint& p) const;       // p in base coordinates
    std::vector<Q> bends() const;           // H * values on the refined fan
};

struct WallStep {
    TropPoint wall;
    long mult = 0;
    Vec2 U;  // developed lift of the wall
    Vec2 w;  // transported direction after crossing
};

struct PairingCertificate {
    char kase = '0';       // '0' trivial, 'A' negative, 'B' positive, 'W' wrapping line
    long lift = 0;         // turn of the minimizing (A) or evaluating (B) lift of v
    long k = 0;            // number of lifts of v inside the negative window
    std::vector<WallStep> transcript;
};

struct PairResult {
    Q value;
    PairingCertificate cert;
};

PairResult pair_cert(const Fan& f, const TropPoint& q, const TropPoint& v);
Q pair(const Fan& f, const TropPoint& q, const TropPoint& v);
// re-evaluates the certificate's branch
bool replay(const Fan& f, const TropPoint& q, const TropPoint& v, const PairResult& r);

// canonical walls of the positive region of q (seed walls between L.minus and q)
std::vector<ClusterWall> positive_walls(const Fan& f, const TropPoint& q);

struct BendReport {
    TropPoint wall;
    long mult;
    Q bend;      // bending parameter of theta at the wall ray
    Q expected;  // -mult * theta(wall)
};

struct TropTheta {
    TropicalFunction fn;
    TropPoint b_q;
    std::vector<BendReport> positive_bends;
};
TropTheta trop_theta(const Fan& f, const TropPoint& q);

// points where x -> <q, x> may bend
std::vector<TropPoint> theta_bend_candidates(const Fan& f, const TropPoint& q);

struct BetaPsi {
    TropicalFunction beta, psi;
    long b = 0;
};
BetaPsi beta_and_psi(const Fan& f, const TropPoint& v);

// rational linear solve, throws DomainError when singular
std::vector<Q> solve_linear(std::vector<std::vector<Q>> A, std::vector<Q> rhs);

TropicalFunction sample_function(const Fan& f, const std::vector<TropPoint>& extra_dirs,
                                 const std::function<Q(const TropPoint&)>& g);
TropicalFunction min_of(const Fan& f, const std::vector<TropicalFunction>& fs);

struct Decomposition {
    bool ok = false;
    std::vector<TropPoint> qs;
    std::string reason;
};
Decomposition decompose(const TropicalFunction& phi);
bool is_tropical(const TropicalFunction& phi);

}  // namespace looij
