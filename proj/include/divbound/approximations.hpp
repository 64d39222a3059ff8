#pragma once

#include "divbound/model.hpp"

namespace divbound {

// The common industry shortcut: subtract the present value of the dividend
// from the spot and price the call as if no dividend were paid.  Kept as a
// comparison baseline — it is exact only for D = 0 and is generally biased.
// Throws std::domain_error if the adjusted spot is not positive.
double black_approx(const PricingProblem& p);

}  // namespace divbound
