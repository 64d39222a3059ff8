#pragma once

namespace divbound {

// Standard normal cumulative distribution, N(x) = P(Z <= x).
//
// Backed by std::erfc, which keeps the absolute error well below 1e-15 over
// the whole range.  Beyond |x| = 40 the true value is indistinguishable from
// 0 or 1 in double precision, so the result saturates to the exact constants
// instead of letting tail noise leak into the bound sums.  NaN propagates.
double norm_cdf(double x);

// Standard normal density, exp(-x^2/2)/sqrt(2*pi).
double norm_pdf(double x);

}  // namespace divbound
