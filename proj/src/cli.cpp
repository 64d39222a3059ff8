#include "divbound/cli.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divbound/approximations.hpp"
#include "divbound/bounds.hpp"
#include "divbound/oracle.hpp"
#include "divbound/refine.hpp"

namespace divbound::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---------------------------------------------------------------- parameters

struct ParamFlags {
    std::string params_file;
    double spot = 0.0, rate = 0.0, volatility = 0.0, drift = 0.0;
    double strike = 0.0, maturity = 0.0, dividend = 0.0, div_time = 0.0;
    CLI::Option* spot_opt = nullptr;
    CLI::Option* rate_opt = nullptr;
    CLI::Option* vol_opt = nullptr;
    CLI::Option* drift_opt = nullptr;
    CLI::Option* strike_opt = nullptr;
    CLI::Option* maturity_opt = nullptr;
    CLI::Option* dividend_opt = nullptr;
    CLI::Option* div_time_opt = nullptr;
};

void add_param_flags(CLI::App& cmd, ParamFlags& f) {
    cmd.add_option("--params-file", f.params_file, "JSON file with the problem parameters");
    f.spot_opt = cmd.add_option("--spot", f.spot, "stock price today");
    f.rate_opt = cmd.add_option("--rate", f.rate, "continuously compounded interest rate");
    f.vol_opt = cmd.add_option("--vol", f.volatility, "lognormal volatility");
    f.drift_opt = cmd.add_option("--drift", f.drift, "real-world drift (recorded, never priced)");
    f.strike_opt = cmd.add_option("--strike", f.strike, "strike");
    f.maturity_opt = cmd.add_option("--maturity", f.maturity, "option maturity in years");
    f.dividend_opt = cmd.add_option("--dividend", f.dividend, "cash dividend amount");
    f.div_time_opt = cmd.add_option("--div-time", f.div_time, "dividend payment time in years");
}

// File first, flags override, then economic validation.
PricingProblem resolve_problem(const ParamFlags& f) {
    PricingProblem p;
    if (!f.params_file.empty()) {
        std::ifstream in(f.params_file);
        if (!in) {
            throw std::invalid_argument("cannot open params file: " + f.params_file);
        }
        nlohmann::json j = nlohmann::json::parse(in);
        p = problem_from_json(j);
    }
    if (f.spot_opt->count()) p.market.spot = f.spot;
    if (f.rate_opt->count()) p.market.rate = f.rate;
    if (f.vol_opt->count()) p.market.volatility = f.volatility;
    if (f.drift_opt->count()) p.market.drift = f.drift;
    if (f.strike_opt->count()) p.call.strike = f.strike;
    if (f.maturity_opt->count()) p.call.maturity = f.maturity;
    if (f.dividend_opt->count()) p.dividend.amount = f.dividend;
    if (f.div_time_opt->count()) p.dividend.time = f.div_time;
    return validate(p);
}

TangentRule parse_tangent_rule(const std::string& name) {
    if (name == "upper-midpoint") return TangentRule::upper_midpoint;
    if (name == "interval-midpoint") return TangentRule::interval_midpoint;
    throw std::invalid_argument("unknown tangent rule: " + name);
}

// ---------------------------------------------------------------- rendering

struct Format {
    std::string kind = "text";  // text | json | csv
    int decimals = 2;
};

void add_format_flags(CLI::App& cmd, Format& fmt) {
    cmd.add_option("--format", fmt.kind, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd.add_option("--decimals", fmt.decimals, "display precision for monetary values")
        ->check(CLI::Range(0, 15))
        ->capture_default_str();
}

// Fixed-point display rounding; never applied to stored values.
std::string money(double v, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << v;
    return os.str();
}

// Interval errors get one extra digit so the narrowing stays visible after
// the bounds themselves have stopped moving at display precision.
std::string tight(double v, int decimals) {
    return money(v, decimals + 1);
}

// Shortest representation that parses back to the same double (the JSON
// grammar guarantees round-tripping); used to echo inputs.
std::string num_repr(double v) {
    return nlohmann::json(v).dump();
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char ch : field) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

void emit_csv_line(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(fields[i]);
    }
    out << '\n';
}

nlohmann::json record_json(const OutputRecord& r) {
    nlohmann::json j;
    j["method"] = r.method;
    j["inputs"] = to_json(r.inputs);
    if (r.lower) j["lower"] = *r.lower;
    if (r.upper) j["upper"] = *r.upper;
    if (r.epsilon) j["epsilon"] = *r.epsilon;
    if (r.price) j["price"] = *r.price;
    if (r.std_error) j["std_error"] = *r.std_error;
    if (r.error_vs_exact) j["error_vs_exact"] = *r.error_vs_exact;
    if (r.m_used) j["m_used"] = *r.m_used;
    if (r.s_star_used) j["s_star_used"] = *r.s_star_used;
    if (r.iterations) j["iterations"] = *r.iterations;
    if (r.converged) j["converged"] = *r.converged;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

const std::vector<std::string>& record_csv_header() {
    static const std::vector<std::string> header = {
        "method", "spot", "rate", "volatility", "drift", "strike", "maturity",
        "dividend_amount", "dividend_time", "lower", "upper", "epsilon", "price",
        "std_error", "error_vs_exact", "m_used", "s_star_used", "iterations",
        "converged",
    };
    return header;
}

std::vector<std::string> record_csv_row(const OutputRecord& r, int decimals) {
    const auto opt_money = [&](const std::optional<double>& v) {
        return v ? money(*v, decimals) : std::string{};
    };
    return {
        r.method,
        num_repr(r.inputs.market.spot),
        num_repr(r.inputs.market.rate),
        num_repr(r.inputs.market.volatility),
        num_repr(r.inputs.market.drift),
        num_repr(r.inputs.call.strike),
        num_repr(r.inputs.call.maturity),
        num_repr(r.inputs.dividend.amount),
        num_repr(r.inputs.dividend.time),
        opt_money(r.lower),
        opt_money(r.upper),
        r.epsilon ? tight(*r.epsilon, decimals) : std::string{},
        opt_money(r.price),
        r.std_error ? money(*r.std_error, decimals + 2) : std::string{},
        opt_money(r.error_vs_exact),
        r.m_used ? std::to_string(*r.m_used) : std::string{},
        opt_money(r.s_star_used),
        r.iterations ? std::to_string(*r.iterations) : std::string{},
        r.converged ? (*r.converged ? "true" : "false") : std::string{},
    };
}

void emit_text(std::ostream& out, const OutputRecord& r, int decimals) {
    out << "method: " << r.method << '\n';
    if (r.price) out << "price: " << money(*r.price, decimals) << '\n';
    if (r.lower && r.upper) {
        out << "interval: [" << money(*r.lower, decimals) << ", "
            << money(*r.upper, decimals) << "]\n";
    }
    if (r.epsilon) out << "epsilon: " << tight(*r.epsilon, decimals) << '\n';
    if (r.std_error) out << "std_error: " << money(*r.std_error, decimals + 2) << '\n';
    if (r.error_vs_exact) out << "error_vs_exact: " << money(*r.error_vs_exact, decimals) << '\n';
    if (r.converged) out << "converged: " << (*r.converged ? "yes" : "no") << '\n';
    if (r.m_used) out << "m: " << *r.m_used << '\n';
    if (r.s_star_used) out << "s_star: " << money(*r.s_star_used, decimals) << '\n';
    if (r.iterations) out << "iterations: " << *r.iterations << '\n';
    out << "elapsed_ms: " << money(r.elapsed_ms, 3) << '\n';
}

// CSV keeps timing off stdout so the payload is deterministic run to run;
// the per-command timing still goes to the diagnostic stream.
void emit_records(const std::vector<OutputRecord>& records, const Format& fmt,
                  std::ostream& out, std::ostream& err) {
    if (fmt.kind == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : records) arr.push_back(record_json(r));
        out << arr.dump(2) << '\n';
    } else if (fmt.kind == "csv") {
        emit_csv_line(out, record_csv_header());
        double total_ms = 0.0;
        for (const auto& r : records) {
            emit_csv_line(out, record_csv_row(r, fmt.decimals));
            total_ms += r.elapsed_ms;
        }
        err << "# computed in " << money(total_ms, 3) << " ms\n";
    } else {
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (i) out << '\n';
            emit_text(out, records[i], fmt.decimals);
        }
    }
}

// ---------------------------------------------------------------- commands

struct PriceOptions {
    ParamFlags params;
    Format fmt;
    double tolerance = 0.01;
    int m_initial = 16;
    int m_max = 1 << 20;
    double s_star = 0.0;  // 0 = auto
    bool no_grow_s_star = false;
    std::string tangent_rule = "upper-midpoint";
};

int run_price(const PriceOptions& opt, std::ostream& out, std::ostream& err) {
    const PricingProblem p = resolve_problem(opt.params);
    RefineConfig config;
    config.tolerance = opt.tolerance;
    config.m_initial = opt.m_initial;
    config.m_max = opt.m_max;
    config.s_star_initial = opt.s_star;
    config.grow_s_star = !opt.no_grow_s_star;
    config.tangent_rule = parse_tangent_rule(opt.tangent_rule);

    const auto start = Clock::now();
    const PriceResult result = price_to_tolerance(p, config);

    OutputRecord rec;
    rec.method = "bounds";
    rec.inputs = p;
    rec.lower = result.bound_pair.lower;
    rec.upper = result.bound_pair.upper;
    rec.epsilon = result.bound_pair.epsilon;
    rec.price = result.price;
    rec.m_used = result.m_used;
    rec.s_star_used = result.s_star_used;
    rec.iterations = result.iterations;
    rec.converged = result.converged;
    rec.elapsed_ms = ms_since(start);

    emit_records({rec}, opt.fmt, out, err);
    if (!result.converged) {
        err << "did not converge to tolerance " << opt.tolerance << " within m_max "
            << opt.m_max << "\n";
        return 2;
    }
    return 0;
}

struct OracleOptions {
    ParamFlags params;
    Format fmt;
    std::string method = "quadrature";  // quadrature | mc | both
    long long paths = 1000000;
    std::uint64_t seed = 42;
    double target_error = 1e-8;
    int max_panels = 1 << 16;
    double width = 12.0;
};

int run_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err) {
    const PricingProblem p = resolve_problem(opt.params);
    std::vector<OutputRecord> records;

    if (opt.method == "quadrature" || opt.method == "both") {
        const auto start = Clock::now();
        const double price = quadrature_price(p, {opt.target_error, opt.max_panels, opt.width});
        OutputRecord rec;
        rec.method = "quadrature";
        rec.inputs = p;
        rec.price = price;
        rec.elapsed_ms = ms_since(start);
        records.push_back(rec);
    }
    if (opt.method == "mc" || opt.method == "both") {
        const auto start = Clock::now();
        const McResult mc = monte_carlo_price(p, {opt.paths, opt.seed});
        OutputRecord rec;
        rec.method = "monte_carlo";
        rec.inputs = p;
        rec.price = mc.price;
        rec.std_error = mc.std_error;
        rec.elapsed_ms = ms_since(start);
        records.push_back(rec);
    }

    emit_records(records, opt.fmt, out, err);
    return 0;
}

struct ApproxOptions {
    ParamFlags params;
    Format fmt;
};

int run_approx(const ApproxOptions& opt, std::ostream& out, std::ostream& err) {
    const PricingProblem p = resolve_problem(opt.params);
    const auto start = Clock::now();
    const double approx = black_approx(p);
    const double exact = quadrature_price(p);

    OutputRecord rec;
    rec.method = "black_approx";
    rec.inputs = p;
    rec.price = approx;
    rec.error_vs_exact = approx - exact;  // sign recorded, not asserted
    rec.elapsed_ms = ms_since(start);
    emit_records({rec}, opt.fmt, out, err);
    return 0;
}

// Built-in reference grid: S = 110, three knots, four grid sizes.
int run_table1(int decimals, std::ostream& out, std::ostream& err) {
    const PricingProblem p =
        validate({{110.0, 0.03, 0.2, 0.01}, {100.0, 1.0}, {5.0, 0.5}});
    const auto start = Clock::now();
    const double exact = quadrature_price(p);

    emit_csv_line(out, {"S", "Sstar", "M", "lower", "exact", "upper", "epsilon"});
    for (const double s_star : {103.5, 155.3, 207.0}) {
        for (const int m : {10, 50, 200, 400}) {
            const BoundPair bp = bound_pair(p, {s_star, m, TangentRule::upper_midpoint});
            emit_csv_line(out, {
                              num_repr(p.market.spot),
                              num_repr(s_star),
                              std::to_string(m),
                              money(bp.lower, decimals),
                              money(exact, decimals),
                              money(bp.upper, decimals),
                              tight(bp.epsilon, decimals),
                          });
        }
    }
    err << "# computed in " << money(ms_since(start), 3) << " ms\n";
    return 0;
}

struct SweepOptions {
    ParamFlags params;
    std::string variable;  // S | Sstar
    std::string range;     // a:b:n
    int m = 200;
    double s_star = 0.0;  // 0 = auto (ignored when sweeping Sstar)
    std::string tangent_rule = "upper-midpoint";
    bool with_exact = false;
    int decimals = 2;
};

std::vector<double> parse_range(const std::string& spec) {
    const auto bad = [&] {
        return std::invalid_argument("malformed range \"" + spec + "\" (expected a:b:n)");
    };
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t colon = spec.find(':', pos);
        if (colon == std::string::npos) {
            parts.push_back(spec.substr(pos));
            break;
        }
        parts.push_back(spec.substr(pos, colon - pos));
        pos = colon + 1;
    }
    if (parts.size() != 3) throw bad();

    const auto parse_double = [&](const std::string& s) {
        double v = 0.0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || end != s.data() + s.size()) throw bad();
        return v;
    };
    const auto parse_count = [&](const std::string& s) {
        long long v = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || end != s.data() + s.size() || v < 1) throw bad();
        return v;
    };

    const double a = parse_double(parts[0]);
    const double b = parse_double(parts[1]);
    const long long n = parse_count(parts[2]);

    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        points.push_back(a);
    } else {
        const double step = (b - a) / static_cast<double>(n - 1);
        for (long long i = 0; i < n; ++i) {
            points.push_back(a + step * static_cast<double>(i));
        }
        points.back() = b;  // inclusive endpoint, exact
    }
    return points;
}

int run_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
    const PricingProblem base = resolve_problem(opt.params);
    const std::vector<double> points = parse_range(opt.range);
    const TangentRule rule = parse_tangent_rule(opt.tangent_rule);
    const bool sweep_spot = opt.variable == "S";
    const auto start = Clock::now();

    std::vector<std::string> header = {sweep_spot ? "S" : "Sstar", "lower", "upper", "epsilon"};
    if (opt.with_exact) header.push_back("exact");
    emit_csv_line(out, header);

    for (const double v : points) {
        PricingProblem p = base;
        BoundConfig config{opt.s_star > 0.0 ? opt.s_star : default_s_star(base), opt.m, rule};
        if (sweep_spot) {
            p.market.spot = v;
            p = validate(p);
        } else {
            config.s_star = v;
        }
        const BoundPair bp = bound_pair(p, config);
        std::vector<std::string> row = {
            num_repr(v),
            money(bp.lower, opt.decimals),
            money(bp.upper, opt.decimals),
            tight(bp.epsilon, opt.decimals),
        };
        if (opt.with_exact) row.push_back(money(quadrature_price(p), opt.decimals));
        emit_csv_line(out, row);
    }
    err << "# computed in " << money(ms_since(start), 3) << " ms\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"European call pricing under one cash dividend, with certified bounds"};
    app.require_subcommand(1);

    PriceOptions price_opt;
    CLI::App* price_cmd = app.add_subcommand(
        "price", "tighten the bound interval until the price is certain to tolerance");
    add_param_flags(*price_cmd, price_opt.params);
    add_format_flags(*price_cmd, price_opt.fmt);
    price_cmd->add_option("--tolerance", price_opt.tolerance, "target interval width")
        ->capture_default_str();
    price_cmd->add_option("--m-initial", price_opt.m_initial, "starting subinterval count")
        ->capture_default_str();
    price_cmd->add_option("--m-max", price_opt.m_max, "subinterval budget")
        ->capture_default_str();
    price_cmd->add_option("--s-star", price_opt.s_star, "truncation knot (default: auto)");
    price_cmd->add_flag("--no-grow-s-star", price_opt.no_grow_s_star,
                        "pin the truncation knot even if refinement plateaus");
    price_cmd->add_option("--tangent-rule", price_opt.tangent_rule, "lower-bound touch points")
        ->check(CLI::IsMember({"upper-midpoint", "interval-midpoint"}))
        ->capture_default_str();

    OracleOptions oracle_opt;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "independent reference prices (quadrature, Monte Carlo)");
    add_param_flags(*oracle_cmd, oracle_opt.params);
    add_format_flags(*oracle_cmd, oracle_opt.fmt);
    oracle_cmd->add_option("--method", oracle_opt.method, "which oracle to run")
        ->check(CLI::IsMember({"quadrature", "mc", "both"}))
        ->capture_default_str();
    oracle_cmd->add_option("--paths", oracle_opt.paths, "Monte Carlo path count")
        ->capture_default_str();
    oracle_cmd->add_option("--seed", oracle_opt.seed, "Monte Carlo seed")
        ->capture_default_str();
    oracle_cmd->add_option("--target-error", oracle_opt.target_error, "quadrature absolute error")
        ->capture_default_str();
    oracle_cmd->add_option("--max-panels", oracle_opt.max_panels, "quadrature panel budget")
        ->capture_default_str();
    oracle_cmd->add_option("--width", oracle_opt.width, "quadrature truncation width")
        ->capture_default_str();

    ApproxOptions approx_opt;
    CLI::App* approx_cmd = app.add_subcommand(
        "approx", "dividend-adjusted Black-Scholes baseline, with its signed error");
    add_param_flags(*approx_cmd, approx_opt.params);
    add_format_flags(*approx_cmd, approx_opt.fmt);

    int table1_decimals = 2;
    CLI::App* table1_cmd = app.add_subcommand(
        "table1", "reference grid of bound pairs across knots and grid sizes (CSV)");
    table1_cmd->add_option("--decimals", table1_decimals, "display precision")
        ->check(CLI::Range(0, 15))
        ->capture_default_str();

    SweepOptions sweep_opt;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "bound pairs along a grid of spot or knot values (CSV)");
    add_param_flags(*sweep_cmd, sweep_opt.params);
    sweep_cmd->add_option("--variable", sweep_opt.variable, "what to sweep")
        ->check(CLI::IsMember({"S", "Sstar"}))
        ->required();
    sweep_cmd->add_option("--range", sweep_opt.range, "a:b:n inclusive grid")->required();
    sweep_cmd->add_option("--m", sweep_opt.m, "subinterval count")->capture_default_str();
    sweep_cmd->add_option("--s-star", sweep_opt.s_star,
                          "truncation knot when sweeping S (default: auto)");
    sweep_cmd->add_option("--tangent-rule", sweep_opt.tangent_rule, "lower-bound touch points")
        ->check(CLI::IsMember({"upper-midpoint", "interval-midpoint"}))
        ->capture_default_str();
    sweep_cmd->add_flag("--with-exact", sweep_opt.with_exact, "add a quadrature column");
    sweep_cmd->add_option("--decimals", sweep_opt.decimals, "display precision")
        ->check(CLI::Range(0, 15))
        ->capture_default_str();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("divbound");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (price_cmd->parsed()) return run_price(price_opt, out, err);
        if (oracle_cmd->parsed()) return run_oracle(oracle_opt, out, err);
        if (approx_cmd->parsed()) return run_approx(approx_opt, out, err);
        if (table1_cmd->parsed()) return run_table1(table1_decimals, out, err);
        if (sweep_cmd->parsed()) return run_sweep(sweep_opt, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace divbound::cli
