#include "divbound/approximations.hpp"

#include <cmath>
#include <stdexcept>

#include "divbound/terminal_values.hpp"

namespace divbound {

double black_approx(const PricingProblem& p) {
    const double adjusted_spot =
        p.market.spot - p.dividend.amount * std::exp(-p.market.rate * p.dividend.time);
    if (!(adjusted_spot > 0.0)) {
        throw std::domain_error("adjusted spot non-positive");
    }
    return bs_call(adjusted_spot, p.call.strike, p.market.rate, p.market.volatility,
                   p.call.maturity);
}

}  // namespace divbound
