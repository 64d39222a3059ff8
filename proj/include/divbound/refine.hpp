#pragma once

#include <functional>

#include "divbound/bounds.hpp"
#include "divbound/model.hpp"

namespace divbound {

struct RefineConfig {
    double tolerance = 0.01;      // target interval width: one currency cent
    int m_initial = 16;
    int m_max = 1 << 20;
    double s_star_initial = 0.0;  // <= 0 means use default_s_star(problem)
    double plateau_ratio = 0.5;   // epsilon must shrink this much per doubling
    bool grow_s_star = true;      // false pins the knot (plateau then persists)
    TangentRule tangent_rule = TangentRule::upper_midpoint;
};

struct PriceResult {
    BoundPair bound_pair;
    double price = 0.0;        // midpoint of the final interval, unrounded
    int m_used = 0;
    double s_star_used = 0.0;
    int iterations = 0;
    bool converged = false;
};

// S* = 2*(D + K*exp(-r*(T - tau))): twice the point where the terminal
// value's asymptote crosses zero.  Far enough out that the truncation tail is
// cheap to bound, close enough in that M subintervals still resolve the
// curved region.
double default_s_star(const PricingProblem& p);

// Called once per refinement step with the interval just computed; lets
// callers watch the certificate tighten (used by tests).
using RefineObserver = std::function<void(const BoundPair&, int m, double s_star)>;

// Doubles M from m_initial until the bound interval is narrower than the
// tolerance *and* both endpoints round to the same multiple of it, so the
// quoted price is unambiguous at that precision (an interval much finer
// than the tolerance is accepted outright).  When a doubling fails to shrink
// epsilon by plateau_ratio, the truncation knot is the binding error source
// and S* is enlarged by 1.5x (unless grow_s_star is off).  Non-convergence
// (M would exceed m_max) is reported in-band via converged = false with the
// best interval achieved; invalid configuration throws std::domain_error.
PriceResult price_to_tolerance(const PricingProblem& p, const RefineConfig& config,
                               const RefineObserver& observer = {});

}  // namespace divbound
