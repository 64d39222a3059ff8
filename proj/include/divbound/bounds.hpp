#pragma once

#include <vector>

#include "divbound/model.hpp"

namespace divbound {

// Where the lower-bound tangents touch V(., tau).  Any tangent to a convex
// function is a global underestimate, so both rules give valid lower bounds;
// they differ in which touch point is paired with the subinterval
// [S_{i-1}, S_i]:
//
//   upper_midpoint     tangent at D + (i + 1/2)*dS, the midpoint of the
//                      subinterval above.  This pairing reproduces the
//                      widely circulated reference table and is the default.
//   interval_midpoint  tangent at D + (i - 1/2)*dS, the subinterval's own
//                      center.  Slightly tighter at large M.
enum class TangentRule { upper_midpoint, interval_midpoint };

struct BoundConfig {
    double s_star = 0.0;  // truncation knot S*, must exceed the dividend
    int m = 1;            // subinterval count M >= 1
    TangentRule tangent_rule = TangentRule::upper_midpoint;
};

// V(., tau) and its derivative sampled on the uniform grid over [D, S*].
// Everything downstream (both bounds) is a deterministic function of this.
struct BoundGrid {
    std::vector<double> nodes;           // S_i = D + i*dS, i = 0..M; last = S*
    std::vector<double> node_values;     // V(S_i, tau); node_values[0] = 0
    std::vector<double> tangent_points;  // touch point for subinterval i
    std::vector<double> tangent_values;  // V at tangent_points
    std::vector<double> tangent_slopes;  // V' at tangent_points
    std::vector<double> chord_slopes;    // alpha_i over [S_{i-1}, S_i]
};

struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
    double epsilon = 0.0;  // upper - lower
};

// Samples the terminal value function on the [D, S*] grid.  Throws
// std::domain_error if s_star does not exceed the dividend or m < 1.
BoundGrid build_grid(const PricingProblem& p, const BoundConfig& config);

// Closed-form propagation of the chord overestimate of V(., tau) to t = 0:
// each chord contributes a digital + asset-digital pair, and the region above
// S* contributes the unit-slope chord to infinity.
double upper_bound(const PricingProblem& p, const BoundGrid& grid);

// Closed-form propagation of the tangent underestimate, with the asymptote
// covering the region above S*.  Clamped at 0: near the dividend the tangent
// lines dip below zero where the true value function is flat at 0, and 0 is
// itself a valid lower bound for a call.
double lower_bound(const PricingProblem& p, const BoundGrid& grid);

// Both bounds on one grid; epsilon = upper - lower >= 0.
BoundPair bound_pair(const PricingProblem& p, const BoundConfig& config);

}  // namespace divbound
