#include "divbound/kernel.hpp"

#include <cmath>

namespace divbound {

namespace {
constexpr double inv_sqrt2 = 0.70710678118654752440;
constexpr double inv_sqrt_2pi = 0.39894228040143267794;
}  // namespace

double norm_cdf(double x) {
    if (std::isnan(x)) return x;
    if (x > 40.0) return 1.0;
    if (x < -40.0) return 0.0;
    return 0.5 * std::erfc(-x * inv_sqrt2);
}

double norm_pdf(double x) {
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

}  // namespace divbound
