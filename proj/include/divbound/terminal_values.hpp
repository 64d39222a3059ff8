#pragma once

#include "divbound/model.hpp"

namespace divbound {

// Vanilla Black-Scholes call on a non-dividend-paying stock.
double bs_call(double s, double strike, double rate, double vol, double ttm);

// V(S-, tau): the option value an instant before the dividend is paid, as a
// function of the cum-dividend stock price s_minus.  Zero for s_minus <= D
// (the ex-dividend price would be worthless); otherwise the Black-Scholes
// value of the remaining life evaluated on the shifted variable s_minus - D.
// Continuous (and convex, nondecreasing) in s_minus.
double value_pre_dividend(double s_minus, const PricingProblem& p);

// dV/dS- of the above; lies in (0, 1) and tends to 0 at the dividend level
// and to 1 far in the money.  Requires s_minus > D strictly.
double value_pre_dividend_derivative(double s_minus, const PricingProblem& p);

// The line (s_minus - D) - K*exp(-r*(T - tau)) that value_pre_dividend
// approaches from above as s_minus grows.
double asymptote(double s_minus, const PricingProblem& p);

}  // namespace divbound
