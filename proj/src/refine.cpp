#include "divbound/refine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace divbound {

namespace {

// Both endpoints land on the same multiple of the tolerance, so quoting the
// price at that precision is unambiguous.
bool rounds_identically(const BoundPair& bp, double tolerance) {
    return std::llround(bp.lower / tolerance) == std::llround(bp.upper / tolerance);
}

}  // namespace

double default_s_star(const PricingProblem& p) {
    const double ttm = p.call.maturity - p.dividend.time;
    return 2.0 * (p.dividend.amount + p.call.strike * std::exp(-p.market.rate * ttm));
}

PriceResult price_to_tolerance(const PricingProblem& p, const RefineConfig& config,
                               const RefineObserver& observer) {
    if (!(config.tolerance > 0.0)) throw std::domain_error("tolerance must be positive");
    if (config.m_initial < 1) throw std::domain_error("m_initial must be at least 1");
    if (config.m_max < config.m_initial) throw std::domain_error("m_max must be at least m_initial");
    if (!(config.plateau_ratio > 0.0 && config.plateau_ratio < 1.0)) {
        throw std::domain_error("plateau_ratio must be in (0, 1)");
    }

    double s_star = config.s_star_initial > 0.0 ? config.s_star_initial : default_s_star(p);
    double previous_epsilon = std::numeric_limits<double>::infinity();

    PriceResult result;
    for (long long m = config.m_initial; m <= config.m_max; m *= 2) {
        const BoundPair bp = bound_pair(
            p, BoundConfig{s_star, static_cast<int>(m), config.tangent_rule});
        ++result.iterations;
        result.bound_pair = bp;
        result.m_used = static_cast<int>(m);
        result.s_star_used = s_star;
        if (observer) observer(bp, static_cast<int>(m), s_star);

        if (bp.epsilon < config.tolerance &&
            (rounds_identically(bp, config.tolerance) ||
             bp.epsilon <= 0.01 * config.tolerance)) {
            result.converged = true;
            break;
        }
        if (config.grow_s_star && bp.epsilon > config.plateau_ratio * previous_epsilon) {
            // Finer grids have stopped helping: the truncation knot, not the
            // grid, now dominates the interval width.
            s_star *= 1.5;
        }
        previous_epsilon = bp.epsilon;
    }

    result.price = 0.5 * (result.bound_pair.lower + result.bound_pair.upper);
    return result;
}

}  // namespace divbound
