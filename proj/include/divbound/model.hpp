#pragma once

#include <json.hpp>

namespace divbound {

// Market environment: constant rate, lognormal stock dynamics.
struct MarketParams {
    double spot = 0.0;        // S, stock price today (cum dividend)
    double rate = 0.0;        // r, continuously compounded
    double volatility = 0.0;  // sigma, per sqrt(year)
    double drift = 0.0;       // mu, real-world growth; never read by pricing
};

// European call contract.
struct CallSpec {
    double strike = 0.0;    // K
    double maturity = 0.0;  // T, year fraction
};

// One known cash dividend paid during the option's life.
struct DividendEvent {
    double amount = 0.0;  // D >= 0
    double time = 0.0;    // tau, 0 < tau < maturity
};

struct PricingProblem {
    MarketParams market;
    CallSpec call;
    DividendEvent dividend;
};

// Checks economic sanity and returns the problem unchanged.  Throws
// std::domain_error naming the offending field otherwise.  A zero dividend is
// allowed: pricing then collapses to the vanilla Black-Scholes value, which
// the tests use as a free regression oracle.
PricingProblem validate(const PricingProblem& p);

// Flat JSON schema shared with the CLI params file: spot, rate, volatility,
// drift, strike, maturity, dividend_amount, dividend_time.  `drift` may be
// omitted on input and defaults to 0.  Parse failures throw
// std::invalid_argument naming the missing or malformed key.
nlohmann::json to_json(const PricingProblem& p);
PricingProblem problem_from_json(const nlohmann::json& j);

}  // namespace divbound
