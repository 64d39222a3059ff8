#include "divbound/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace divbound {

namespace {

void require_finite(const char* name, double v) {
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string(name) + " must be finite");
    }
}

double required_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        throw std::invalid_argument(std::string("params missing field \"") + key + "\"");
    }
    if (!j.at(key).is_number()) {
        throw std::invalid_argument(std::string("params field \"") + key + "\" must be a number");
    }
    return j.at(key).get<double>();
}

}  // namespace

PricingProblem validate(const PricingProblem& p) {
    require_finite("spot", p.market.spot);
    require_finite("rate", p.market.rate);
    require_finite("volatility", p.market.volatility);
    require_finite("drift", p.market.drift);
    require_finite("strike", p.call.strike);
    require_finite("maturity", p.call.maturity);
    require_finite("dividend amount", p.dividend.amount);
    require_finite("dividend time", p.dividend.time);

    if (p.market.spot <= 0.0) throw std::domain_error("spot must be positive");
    if (p.market.volatility <= 0.0) throw std::domain_error("volatility must be positive");
    if (p.call.strike <= 0.0) throw std::domain_error("strike must be positive");
    if (p.call.maturity <= 0.0) throw std::domain_error("maturity must be positive");
    if (p.dividend.amount < 0.0) throw std::domain_error("dividend amount must be nonnegative");
    if (p.dividend.time <= 0.0 || p.dividend.time >= p.call.maturity) {
        throw std::domain_error("dividend time outside option life");
    }
    return p;
}

nlohmann::json to_json(const PricingProblem& p) {
    return {
        {"spot", p.market.spot},
        {"rate", p.market.rate},
        {"volatility", p.market.volatility},
        {"drift", p.market.drift},
        {"strike", p.call.strike},
        {"maturity", p.call.maturity},
        {"dividend_amount", p.dividend.amount},
        {"dividend_time", p.dividend.time},
    };
}

PricingProblem problem_from_json(const nlohmann::json& j) {
    PricingProblem p;
    p.market.spot = required_number(j, "spot");
    p.market.rate = required_number(j, "rate");
    p.market.volatility = required_number(j, "volatility");
    p.market.drift = j.contains("drift") ? required_number(j, "drift") : 0.0;
    p.call.strike = required_number(j, "strike");
    p.call.maturity = required_number(j, "maturity");
    p.dividend.amount = required_number(j, "dividend_amount");
    p.dividend.time = required_number(j, "dividend_time");
    return p;
}

}  // namespace divbound
