#include "divbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "divbound/kernel.hpp"
#include "divbound/terminal_values.hpp"

namespace divbound {

namespace {

// Compensated (Kahan) accumulator: keeps the bound sums accurate to ~1 ulp
// per add even for very fine grids, and makes the reduction order explicit so
// repeated runs are bit-identical.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// N(d_i) and N(d_i - sigma*sqrt(tau)) for every grid node, where d_i is the
// standardized log-distance from the spot to node i over the horizon tau.
// With a zero dividend the first node is 0; a tiny positive stand-in is
// substituted for the d_0 argument only, realizing the limit N(d_0) -> 1.
struct NodeCdfs {
    std::vector<double> plain;    // N(d_i)
    std::vector<double> shifted;  // N(d_i - sigma*sqrt(tau))
};

NodeCdfs node_cdfs(const PricingProblem& p, const BoundGrid& grid) {
    const double spot = p.market.spot;
    const double vol = p.market.volatility;
    const double tau = p.dividend.time;
    const double sig_rt = vol * std::sqrt(tau);

    NodeCdfs c;
    c.plain.resize(grid.nodes.size());
    c.shifted.resize(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        double node = grid.nodes[i];
        if (node <= 0.0) node = 1e-12 * p.call.strike;
        const double d =
            (std::log(spot / node) + (p.market.rate + 0.5 * vol * vol) * tau) / sig_rt;
        c.plain[i] = norm_cdf(d);
        c.shifted[i] = norm_cdf(d - sig_rt);
    }
    return c;
}

}  // namespace

BoundGrid build_grid(const PricingProblem& p, const BoundConfig& config) {
    const double dividend = p.dividend.amount;
    if (!(config.s_star > dividend)) {
        throw std::domain_error("s_star must exceed the dividend amount");
    }
    if (config.m < 1) {
        throw std::domain_error("m must be at least 1");
    }

    const auto m = static_cast<std::size_t>(config.m);
    const double ds = (config.s_star - dividend) / static_cast<double>(m);
    const double offset = config.tangent_rule == TangentRule::upper_midpoint ? 0.5 : -0.5;

    BoundGrid grid;
    grid.nodes.resize(m + 1);
    grid.node_values.resize(m + 1);
    grid.tangent_points.resize(m);
    grid.tangent_values.resize(m);
    grid.tangent_slopes.resize(m);
    grid.chord_slopes.resize(m);

    for (std::size_t i = 0; i <= m; ++i) {
        grid.nodes[i] = dividend + ds * static_cast<double>(i);
    }
    grid.nodes[m] = config.s_star;  // exact knot regardless of rounding in ds*m
    for (std::size_t i = 0; i <= m; ++i) {
        grid.node_values[i] = value_pre_dividend(grid.nodes[i], p);
    }
    for (std::size_t i = 1; i <= m; ++i) {
        const double touch = dividend + ds * (static_cast<double>(i) + offset);
        grid.tangent_points[i - 1] = touch;
        grid.tangent_values[i - 1] = value_pre_dividend(touch, p);
        grid.tangent_slopes[i - 1] = value_pre_dividend_derivative(touch, p);
        grid.chord_slopes[i - 1] = (grid.node_values[i] - grid.node_values[i - 1]) / ds;
    }
    return grid;
}

double upper_bound(const PricingProblem& p, const BoundGrid& grid) {
    const double spot = p.market.spot;
    const double disc = std::exp(-p.market.rate * p.dividend.time);
    const NodeCdfs c = node_cdfs(p, grid);
    const std::size_t m = grid.chord_slopes.size();

    // Each chord over [S_{i-1}, S_i] prices as an asset-digital plus a cash
    // digital on the node interval; the last two terms are the chord of unit
    // slope covering (S*, infinity).
    KahanSum acc;
    for (std::size_t i = 1; i <= m; ++i) {
        const double a = c.plain[i - 1] - c.plain[i];
        const double b = c.shifted[i - 1] - c.shifted[i];
        const double alpha = grid.chord_slopes[i - 1];
        acc.add(alpha * a * spot +
                disc * (grid.node_values[i - 1] - alpha * grid.nodes[i - 1]) * b);
    }
    acc.add(spot * c.plain[m]);
    acc.add(disc * (grid.node_values[m] - grid.nodes[m]) * c.shifted[m]);
    return std::max(acc.sum, 0.0);
}

double lower_bound(const PricingProblem& p, const BoundGrid& grid) {
    const double spot = p.market.spot;
    const double disc = std::exp(-p.market.rate * p.dividend.time);
    const double ttm = p.call.maturity - p.dividend.time;
    const NodeCdfs c = node_cdfs(p, grid);
    const std::size_t m = grid.tangent_points.size();

    // Tangent lines under the convex terminal value on [D, S*]; above S* the
    // value function is undercut by its own asymptote.
    KahanSum acc;
    for (std::size_t i = 1; i <= m; ++i) {
        const double a = c.plain[i - 1] - c.plain[i];
        const double b = c.shifted[i - 1] - c.shifted[i];
        const double touch = grid.tangent_points[i - 1];
        const double value = grid.tangent_values[i - 1];
        const double slope = grid.tangent_slopes[i - 1];
        acc.add(spot * slope * a + disc * (value - slope * touch) * b);
    }
    acc.add(spot * c.plain[m]);
    const double floor_strike =
        p.dividend.amount + p.call.strike * std::exp(-p.market.rate * ttm);
    acc.add(-disc * floor_strike * c.shifted[m]);
    return std::max(acc.sum, 0.0);
}

BoundPair bound_pair(const PricingProblem& p, const BoundConfig& config) {
    const BoundGrid grid = build_grid(p, config);
    BoundPair bp;
    bp.lower = lower_bound(p, grid);
    bp.upper = upper_bound(p, grid);
    bp.epsilon = std::max(bp.upper - bp.lower, 0.0);
    return bp;
}

}  // namespace divbound
