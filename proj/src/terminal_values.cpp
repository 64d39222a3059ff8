#include "divbound/terminal_values.hpp"

#include <cmath>
#include <stdexcept>

#include "divbound/kernel.hpp"

namespace divbound {

double bs_call(double s, double strike, double rate, double vol, double ttm) {
    if (!(s > 0.0)) throw std::domain_error("bs_call: s must be positive");
    if (!(strike > 0.0)) throw std::domain_error("bs_call: strike must be positive");
    if (!(vol > 0.0)) throw std::domain_error("bs_call: vol must be positive");
    if (!(ttm > 0.0)) throw std::domain_error("bs_call: ttm must be positive");

    const double sig_rt = vol * std::sqrt(ttm);
    const double d2 = (std::log(s / strike) + (rate - 0.5 * vol * vol) * ttm) / sig_rt;
    return s * norm_cdf(d2 + sig_rt) - strike * std::exp(-rate * ttm) * norm_cdf(d2);
}

double value_pre_dividend(double s_minus, const PricingProblem& p) {
    // Work in the shifted variable s = s_minus - D so the log argument stays
    // exact near the kink instead of cancelling inside a log(s_minus - D).
    const double s = s_minus - p.dividend.amount;
    if (!(s > 0.0)) return 0.0;
    return bs_call(s, p.call.strike, p.market.rate, p.market.volatility,
                   p.call.maturity - p.dividend.time);
}

double value_pre_dividend_derivative(double s_minus, const PricingProblem& p) {
    const double s = s_minus - p.dividend.amount;
    if (!(s > 0.0)) {
        throw std::domain_error("s_minus must exceed the dividend amount");
    }
    const double ttm = p.call.maturity - p.dividend.time;
    const double vol = p.market.volatility;
    const double sig_rt = vol * std::sqrt(ttm);
    const double d1 = (std::log(s / p.call.strike) + (p.market.rate + 0.5 * vol * vol) * ttm) / sig_rt;
    const double d2 = d1 - sig_rt;
    const double df = std::exp(-p.market.rate * ttm);
    // The two density terms cancel analytically, leaving N(d1); they are kept
    // so the implementation matches the closed-form expression the bounds are
    // derived from, and cost nothing at double precision.
    return norm_cdf(d1) + (norm_pdf(d1) - p.call.strike * df * norm_pdf(d2) / s) / sig_rt;
}

double asymptote(double s_minus, const PricingProblem& p) {
    const double ttm = p.call.maturity - p.dividend.time;
    return (s_minus - p.dividend.amount) - p.call.strike * std::exp(-p.market.rate * ttm);
}

}  // namespace divbound
