#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "divbound/model.hpp"

namespace divbound::cli {

// One priced result in serializable form.  Optional fields are present only
// when the method produces them: the interval triplet and refinement stats
// for `bounds`, std_error for `monte_carlo`, error_vs_exact for
// `black_approx`.
struct OutputRecord {
    std::string method;  // bounds | quadrature | monte_carlo | black_approx
    PricingProblem inputs;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<double> epsilon;
    std::optional<double> price;
    std::optional<double> std_error;
    std::optional<double> error_vs_exact;
    std::optional<int> m_used;
    std::optional<double> s_star_used;
    std::optional<int> iterations;
    std::optional<bool> converged;
    double elapsed_ms = 0.0;
};

// Full command-line front end; `args` excludes the program name.  Payload
// goes to `out`, diagnostics and timing to `err`.  Returns the process exit
// status: 0 on success (price converged), 2 when a price was produced but
// did not converge, 1 for invalid inputs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divbound::cli
