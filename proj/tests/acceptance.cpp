// End-to-end acceptance gate for the bounded dividend-call pricer.  Each
// criterion prints exactly one PASS/FAIL line; the exit status is the number
// of failures, so this binary doubles as a ctest entry.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>

#include "divbound/bounds.hpp"
#include "divbound/oracle.hpp"
#include "divbound/refine.hpp"
#include "divbound/terminal_values.hpp"
#include "test_support.hpp"

namespace {

using divbound::BoundConfig;
using divbound::BoundPair;
using divbound::PricingProblem;
using divbound::TangentRule;

using Check = std::pair<bool, std::string>;

std::string fmt(double v, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << v;
    return os.str();
}

struct Runner {
    int number = 0;
    int failures = 0;

    // max_seconds == 0 means the criterion carries no runtime requirement.
    void run(const std::string& label, double max_seconds,
             const std::function<Check()>& body) {
        ++number;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            Check result = body();
            ok = result.first;
            detail = result.second;
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (max_seconds > 0.0 && seconds >= max_seconds) {
            ok = false;
            detail += "; exceeded " + fmt(max_seconds, 0) + " s budget";
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": "
                  << label << " (" << detail << "; " << fmt(seconds, 3) << " s)\n";
        if (!ok) ++failures;
    }
};

// ---------------------------------------------------------------- criteria

Check bound_table_reproduced() {
    const PricingProblem p = testsupport::reference_problem();
    struct Cell {
        double s_star;
        int m;
        double lower, upper, epsilon;
    };
    static constexpr Cell cells[] = {
        {103.5, 10, 11.24, 15.41, 4.166}, {103.5, 50, 11.61, 15.35, 3.739},
        {103.5, 200, 11.62, 15.35, 3.721}, {103.5, 400, 11.63, 15.35, 3.721},
        {155.3, 10, 11.39, 13.20, 1.807}, {155.3, 50, 12.79, 12.88, 0.096},
        {155.3, 200, 12.87, 12.87, 0.006}, {155.3, 400, 12.87, 12.87, 0.002},
        {207.0, 10, 10.64, 13.45, 2.813}, {207.0, 50, 12.72, 12.89, 0.170},
        {207.0, 200, 12.86, 12.87, 0.011}, {207.0, 400, 12.87, 12.87, 0.003},
    };
    int good = 0;
    for (const Cell& c : cells) {
        const BoundPair bp = divbound::bound_pair(p, BoundConfig{c.s_star, c.m});
        if (std::abs(bp.lower - c.lower) <= 0.005 &&
            std::abs(bp.upper - c.upper) <= 0.005 &&
            std::abs(bp.epsilon - c.epsilon) <= 0.001) {
            ++good;
        }
    }
    return {good == 12, std::to_string(good) + "/12 cells within 0.005 on bounds, 0.001 on width"};
}

Check quadrature_reference_price() {
    const double q = divbound::quadrature_price(testsupport::reference_problem());
    return {std::abs(q - 12.87) <= 0.005, "computed " + fmt(q, 4) + " vs quoted 12.87"};
}

Check refinement_reaches_cent_quote() {
    const divbound::PriceResult r =
        divbound::price_to_tolerance(testsupport::reference_problem(), {});
    const long long lo = std::llround(r.bound_pair.lower * 100.0);
    const long long hi = std::llround(r.bound_pair.upper * 100.0);
    const bool ok = r.converged && lo == hi && lo == 1287;
    return {ok, "both endpoints quote " + fmt(static_cast<double>(lo) / 100.0, 2) +
                    " after m=" + std::to_string(r.m_used)};
}

Check random_problems_bracketed() {
    testsupport::Rng rng(20260814);
    const int n = 220;
    int violations = 0;
    for (int i = 0; i < n; ++i) {
        const PricingProblem q = testsupport::random_problem(rng);
        const BoundPair bp =
            divbound::bound_pair(q, BoundConfig{divbound::default_s_star(q), 200});
        const double exact = divbound::quadrature_price(q);
        if (!(bp.lower - 1e-6 <= exact && exact <= bp.upper + 1e-6)) ++violations;
    }
    return {violations == 0, std::to_string(n - violations) + "/" + std::to_string(n) +
                                 " intervals contain the quadrature price"};
}

Check terminal_value_shape() {
    testsupport::Rng rng(5150);
    const int problems = 20;
    const int triples = 10000;
    long long violations = 0;
    for (int k = 0; k < problems; ++k) {
        const PricingProblem q = testsupport::random_problem(rng);
        const double hi = 4.0 * divbound::default_s_star(q);
        for (int t = 0; t < triples; ++t) {
            double a = rng.uniform(0.0, hi);
            double b = rng.uniform(0.0, hi);
            double c = rng.uniform(0.0, hi);
            if (a > b) std::swap(a, b);
            if (b > c) std::swap(b, c);
            if (a > b) std::swap(a, b);
            const double va = divbound::value_pre_dividend(a, q);
            const double vb = divbound::value_pre_dividend(b, q);
            const double vc = divbound::value_pre_dividend(c, q);
            const double vm = divbound::value_pre_dividend(0.5 * (a + c), q);
            const bool convex = vm <= 0.5 * (va + vc) + 1e-12;
            const bool monotone = va <= vb + 1e-12 && vb <= vc + 1e-12;
            const bool dominates = vb + 1e-12 >= divbound::asymptote(b, q) && vb >= 0.0;
            if (!(convex && monotone && dominates)) ++violations;
        }
    }
    return {violations == 0,
            std::to_string(problems) + " problems x " + std::to_string(triples) +
                " triples, " + std::to_string(violations) + " violations"};
}

Check derivative_matches_finite_differences() {
    const PricingProblem p = testsupport::reference_problem();
    const double lo = p.dividend.amount + 0.01 * p.call.strike;
    const double hi = p.dividend.amount + 10.0 * p.call.strike;
    const int n = 1000;
    double worst = 0.0;
    int bad = 0;
    for (int i = 0; i < n; ++i) {
        const double s = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        const double h = 1e-5 * s;
        const double fd = (divbound::value_pre_dividend(s - 2.0 * h, p) -
                           8.0 * divbound::value_pre_dividend(s - h, p) +
                           8.0 * divbound::value_pre_dividend(s + h, p) -
                           divbound::value_pre_dividend(s + 2.0 * h, p)) /
                          (12.0 * h);
        const double exact = divbound::value_pre_dividend_derivative(s, p);
        if (std::abs(exact) < 1e-12 && std::abs(fd) < 1e-12) continue;
        const double rel = std::abs(fd - exact) / std::abs(exact);
        worst = std::max(worst, rel);
        if (rel > 1e-6) ++bad;
    }
    return {bad == 0, std::to_string(n) + " points, worst relative gap " +
                          fmt(worst * 1e9, 3) + "e-9"};
}

Check zero_dividend_reduces_to_vanilla() {
    PricingProblem z = testsupport::reference_problem();
    z.dividend.amount = 0.0;
    const double vanilla = divbound::bs_call(z.market.spot, z.call.strike, z.market.rate,
                                             z.market.volatility, z.call.maturity);
    const double knot = 4.0 * (z.call.strike + z.market.spot);
    const BoundPair bp =
        divbound::bound_pair(z, BoundConfig{knot, 400, TangentRule::interval_midpoint});
    const double quad = divbound::quadrature_price(z);
    const bool ok = bp.lower <= vanilla && vanilla <= bp.upper && bp.epsilon < 0.01 &&
                    std::abs(quad - vanilla) <= 1e-6;
    return {ok, "vanilla " + fmt(vanilla, 6) + " inside [" + fmt(bp.lower, 6) + ", " +
                    fmt(bp.upper, 6) + "], width " + fmt(bp.epsilon, 6) +
                    ", quadrature gap " + fmt(std::abs(quad - vanilla) * 1e9, 3) + "e-9"};
}

Check pinned_knot_plateau() {
    const PricingProblem p = testsupport::reference_problem();
    const double e50 = divbound::bound_pair(p, BoundConfig{103.5, 50}).epsilon;
    const double e200 = divbound::bound_pair(p, BoundConfig{103.5, 200}).epsilon;
    const double e400 = divbound::bound_pair(p, BoundConfig{103.5, 400}).epsilon;
    const bool ok = std::abs(e400 - 3.721) <= 0.002 && e400 < e200 && e200 < e50;
    return {ok, "width settles at " + fmt(e400, 4) + " (3.721 +/- 0.002)"};
}

Check monte_carlo_concordance() {
    const PricingProblem p = testsupport::reference_problem();
    divbound::McConfig config;
    config.paths = 1000000;
    config.seed = 42;
    const divbound::McResult mc = divbound::monte_carlo_price(p, config);
    const double quad = divbound::quadrature_price(p);
    const double gap = std::abs(mc.price - quad);
    return {gap <= 4.0 * mc.std_error,
            "gap " + fmt(gap, 5) + " = " + fmt(gap / mc.std_error, 2) +
                " standard errors over 1e6 paths"};
}

}  // namespace

int main() {
    Runner runner;
    runner.run("reference bound table reproduced", 1.0, bound_table_reproduced);
    runner.run("quadrature matches the reference price", 1.0, quadrature_reference_price);
    runner.run("refinement converges to an unambiguous cent quote", 0.0,
               refinement_reaches_cent_quote);
    runner.run("random problems always bracket the quadrature price", 30.0,
               random_problems_bracketed);
    runner.run("terminal value is convex, monotone, and dominates its asymptote", 0.0,
               terminal_value_shape);
    runner.run("analytic derivative agrees with finite differences", 0.0,
               derivative_matches_finite_differences);
    runner.run("zero dividend reduces to vanilla Black-Scholes", 0.0,
               zero_dividend_reduces_to_vanilla);
    runner.run("pinned knot width plateaus at the known level", 0.0, pinned_knot_plateau);
    runner.run("Monte Carlo concordant with quadrature", 0.0, monte_carlo_concordance);

    std::cout << (runner.number - runner.failures) << "/" << runner.number
              << " criteria passed\n";
    return runner.failures;
}
