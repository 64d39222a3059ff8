#pragma once

#include <cstdint>

#include "divbound/model.hpp"

namespace divbound {

struct QuadConfig {
    double target_abs_error = 1e-8;
    int max_panels = 1 << 16;
    double truncation_width = 12.0;  // half-width in sigma*sqrt(tau) units
};

struct McConfig {
    long long paths = 1;
    std::uint64_t seed = 0;
};

struct McResult {
    double price = 0.0;
    double std_error = 0.0;
};

// Reference price by deterministic quadrature: the time-zero value is the
// discounted lognormal average of the pre-dividend value over the horizon
// tau.  The domain is truncated at truncation_width standard deviations and
// cut at the dividend level (the integrand vanishes identically below it),
// then integrated by adaptive Gauss-Legendre panels until the estimated
// absolute error is below target_abs_error.  Throws std::runtime_error if
// the panel budget is exhausted first, std::domain_error on a bad config.
double quadrature_price(const PricingProblem& p, const QuadConfig& config = {});

// Plain Monte Carlo cross-check: simulate the pre-dividend stock level, value
// the remainder in closed form, average.  Normal draws come from a
// counter-based generator (hash of seed and path index through an inverse
// normal CDF), so the estimate is bit-reproducible for a fixed seed on any
// platform and independent of evaluation order.
McResult monte_carlo_price(const PricingProblem& p, const McConfig& config);

}  // namespace divbound
