#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "divbound/bounds.hpp"
#include "divbound/oracle.hpp"
#include "divbound/refine.hpp"
#include "divbound/terminal_values.hpp"
#include "test_support.hpp"

using namespace divbound;

TEST_SUITE("bounds") {

TEST_CASE("grid layout matches the reference construction") {
    const PricingProblem p = testsupport::reference_problem();
    const BoundGrid grid = build_grid(p, {103.5, 10});

    REQUIRE(grid.nodes.size() == 11);
    REQUIRE(grid.node_values.size() == 11);
    REQUIRE(grid.tangent_points.size() == 10);
    REQUIRE(grid.chord_slopes.size() == 10);

    CHECK(grid.nodes[0] == 5.0);
    CHECK(std::abs(grid.nodes[1] - 14.85) < 1e-12);
    CHECK(grid.nodes[10] == 103.5);  // knot is exact by construction
    CHECK(grid.node_values[0] == 0.0);
    for (std::size_t i = 0; i + 1 < grid.nodes.size(); ++i) {
        CHECK(grid.nodes[i] < grid.nodes[i + 1]);
    }
    // Default rule: tangents touch half a step above each subinterval.
    CHECK(std::abs(grid.tangent_points[0] - (5.0 + 1.5 * 9.85)) < 1e-12);

    const BoundGrid centered = build_grid(p, {103.5, 10, TangentRule::interval_midpoint});
    CHECK(std::abs(centered.tangent_points[0] - (5.0 + 0.5 * 9.85)) < 1e-12);
}

TEST_CASE("grid samples the terminal value function exactly") {
    const PricingProblem p = testsupport::reference_problem();
    const BoundGrid grid = build_grid(p, {207.0, 25});
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        CHECK(grid.node_values[i] == value_pre_dividend(grid.nodes[i], p));
    }
    for (std::size_t i = 0; i < grid.tangent_points.size(); ++i) {
        CHECK(grid.tangent_values[i] == value_pre_dividend(grid.tangent_points[i], p));
        CHECK(grid.tangent_slopes[i] == value_pre_dividend_derivative(grid.tangent_points[i], p));
    }
}

TEST_CASE("single subinterval is one chord") {
    const PricingProblem p = testsupport::reference_problem();
    const BoundGrid grid = build_grid(p, {103.5, 1});
    REQUIRE(grid.chord_slopes.size() == 1);
    CHECK(grid.chord_slopes[0] ==
          (value_pre_dividend(103.5, p) - 0.0) / (103.5 - 5.0));
    CHECK(bound_pair(p, {103.5, 1}).lower <= bound_pair(p, {103.5, 1}).upper);
}

TEST_CASE("slopes encode convexity") {
    testsupport::Rng rng(99);
    for (int trial = 0; trial < 6; ++trial) {
        const PricingProblem p = testsupport::random_problem(rng);
        const BoundGrid grid = build_grid(p, {default_s_star(p), 64});
        for (std::size_t i = 0; i < grid.chord_slopes.size(); ++i) {
            CHECK(grid.chord_slopes[i] >= -1e-12);
            CHECK(grid.chord_slopes[i] <= 1.0 + 1e-12);
            CHECK(grid.tangent_slopes[i] >= 0.0);
            CHECK(grid.tangent_slopes[i] <= 1.0);
            if (i > 0) {
                CHECK(grid.chord_slopes[i] >= grid.chord_slopes[i - 1] - 1e-12);
                CHECK(grid.tangent_slopes[i] >= grid.tangent_slopes[i - 1] - 1e-12);
            }
        }
    }
}

TEST_CASE("rejects a knot at or below the dividend, and m below 1") {
    const PricingProblem p = testsupport::reference_problem();
    CHECK_THROWS_WITH_AS(build_grid(p, {5.0, 10}), "s_star must exceed the dividend amount",
                         std::domain_error);
    CHECK_THROWS_AS(build_grid(p, {4.0, 10}), std::domain_error);
    CHECK_THROWS_WITH_AS(build_grid(p, {103.5, 0}), "m must be at least 1", std::domain_error);
}

TEST_CASE("reference rows reproduce the frozen bounds") {
    // Frozen from an independent high-precision implementation of the same
    // closed forms; the displayed (2-decimal) values match the frozen reference
    // reference table on all rows.
    struct Row {
        double s_star;
        int m;
        double lower, upper;
    };
    const Row rows[] = {
        {103.5, 10, 11.241650, 15.407214},  {103.5, 50, 11.609618, 15.348585},
        {103.5, 200, 11.624807, 15.346271}, {103.5, 400, 11.625562, 15.346155},
        {155.3, 10, 11.390540, 13.197953},  {155.3, 50, 12.788167, 12.883777},
        {155.3, 200, 12.865080, 12.871312}, {155.3, 400, 12.869082, 12.870688},
        {207.0, 10, 10.641211, 13.454083},  {207.0, 50, 12.724887, 12.894455},
        {207.0, 200, 12.860833, 12.871952}, {207.0, 400, 12.868027, 12.870825},
    };
    const PricingProblem p = testsupport::reference_problem();
    for (const Row& row : rows) {
        const BoundPair bp = bound_pair(p, {row.s_star, row.m});
        CHECK(std::abs(bp.lower - row.lower) < 5e-6);
        CHECK(std::abs(bp.upper - row.upper) < 5e-6);
        CHECK(bp.epsilon == bp.upper - bp.lower);
    }
}

TEST_CASE("plateau anchor: small knot caps the achievable width") {
    const PricingProblem p = testsupport::reference_problem();
    CHECK(std::abs(bound_pair(p, {103.5, 400}).epsilon - 3.720593) < 5e-6);
}

TEST_CASE("both tangent rules bracket the quadrature price") {
    testsupport::Rng rng(4242);
    std::vector<PricingProblem> problems = {testsupport::reference_problem()};
    for (int i = 0; i < 7; ++i) problems.push_back(testsupport::random_problem(rng));

    for (const PricingProblem& p : problems) {
        const double exact = quadrature_price(p);
        for (const TangentRule rule : {TangentRule::upper_midpoint, TangentRule::interval_midpoint}) {
            const BoundPair bp = bound_pair(p, {default_s_star(p), 200, rule});
            CHECK(bp.lower - 1e-6 <= exact);
            CHECK(exact <= bp.upper + 1e-6);
            CHECK(bp.lower >= 0.0);
            CHECK(bp.epsilon >= 0.0);
        }
    }
}

TEST_CASE("zero dividend static replication matches the closed form") {
    PricingProblem p = testsupport::reference_problem();
    p.dividend.amount = 0.0;
    const double vanilla = bs_call(110.0, 100.0, 0.03, 0.2, 1.0);
    const BoundPair bp = bound_pair(p, {400.0, 256, TangentRule::interval_midpoint});
    CHECK(std::abs(bp.lower - vanilla) < 5e-3);
    CHECK(std::abs(bp.upper - vanilla) < 5e-3);
    CHECK(bp.lower <= vanilla);
    CHECK(vanilla <= bp.upper);
}

TEST_CASE("interval width shrinks as the grid doubles") {
    const PricingProblem p = testsupport::reference_problem();
    const double s_star = 1.5 * (5.0 + 100.0 * std::exp(-0.015));
    double prev = std::numeric_limits<double>::infinity();
    for (int m = 10; m <= 640; m *= 2) {
        const double eps = bound_pair(p, {s_star, m}).epsilon;
        CHECK(eps < prev);
        prev = eps;
    }
}

TEST_CASE("time-zero price is convex in the spot") {
    PricingProblem p = testsupport::reference_problem();
    std::vector<double> price(50);
    for (int i = 0; i < 50; ++i) {
        p.market.spot = 50.0 + 150.0 * i / 49.0;
        price[i] = quadrature_price(p);
    }
    for (int i = 1; i + 1 < 50; ++i) {
        CHECK(price[i] <= 0.5 * (price[i - 1] + price[i + 1]) + 1e-9);
    }
}

}  // TEST_SUITE
