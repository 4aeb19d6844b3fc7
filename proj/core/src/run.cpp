#include "nighedge/run.hpp"

#include "nighedge/error.hpp"
#include "nighedge/mmm.hpp"
#include "nighedge/path_io.hpp"
#include "nighedge/simulate.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

namespace nighedge {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double to_double(std::string_view key, std::string_view v) {
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
        throw InvalidInput("invalid number for '" + std::string(key) + "': '" + std::string(v) + "'");
    return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw InvalidInput("invalid integer for '" + std::string(key) + "': '" + std::string(v) + "'");
    return out;
}

bool to_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw InvalidInput("invalid boolean for '" + std::string(key) + "': '" + std::string(v) + "'");
}

std::vector<double> to_list(std::string_view key, std::string_view v) {
    std::vector<double> out;
    while (true) {
        const auto comma = v.find(',');
        const std::string_view item = trim(v.substr(0, comma));
        if (!item.empty()) out.push_back(to_double(key, item));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

std::string g12(double x) { return format_g12(x); }

void append_validation(std::ostringstream& d, const ValidationReport& r) {
    d << "validation: " << (r.pass ? "PASS" : "FAIL") << " ("
      << (r.mode == ValidationMode::strict ? "strict" : "math") << ")\n";
    for (const std::string& v : r.violations) d << "  violated: " << v << '\n';
    if (r.closed_forms_available) {
        d << "  mu_s = " << g12(r.mu_s) << "\n  c_nu = " << g12(r.c_nu) << '\n';
        d << "  mu_s <= 0: " << (r.mu_s_nonpositive ? "yes" : "no") << '\n';
        d << "  c_nu > 0: " << (r.c_nu_positive ? "yes" : "no") << '\n';
        d << "  mu_s > -c_nu: " << (r.mu_s_above_minus_c_nu ? "yes" : "no") << '\n';
    } else {
        d << "  closed forms unavailable (exponential moments do not exist)\n";
    }
}

void append_scalars(std::ostringstream& d, const MmmScalars& s) {
    d << "mmm: h = " << g12(s.h) << ", mu_star = " << g12(s.mu_star) << '\n';
}

void append_quad(std::ostringstream& d, const QuadConfig& q) {
    d << "quad: N = " << q.n_points << ", eta = " << g12(q.eta) << ", a = " << g12(q.a)
      << ", epsilon = " << g12(q.epsilon) << ", rule = " << to_string(q.rule)
      << ", N*eta = " << g12(q.upper_limit()) << '\n';
}

struct Worst {
    double strike = 0.0;
    double tau = 0.0;
    double spot = 0.0;
    TruncationBound bound;
};

// Largest w_min per strike over the given (spot, tau) pairs.
std::vector<Worst> certify_all(const FourierEngine& engine, std::span<const double> spots,
                               std::span<const double> taus, std::span<const double> strikes) {
    std::vector<Worst> out;
    for (double k : strikes) {
        Worst w;
        w.strike = k;
        bool first = true;
        for (std::size_t d = 0; d < spots.size(); ++d) {
            const TruncationBound b = engine.certify(spots[d], taus[d], k);
            if (first || b.w_min > w.bound.w_min || (!b.satisfied && w.bound.satisfied)) {
                w.tau = taus[d];
                w.spot = spots[d];
                w.bound = b;
                first = false;
            }
        }
        out.push_back(w);
    }
    return out;
}

bool report_certificates(std::ostringstream& d, const std::vector<Worst>& worst, double upper) {
    bool ok = true;
    for (const Worst& w : worst) {
        if (!w.bound.satisfied) {
            ok = false;
            d << "certificate FAILED: tau = " << g12(w.tau) << ", K = " << g12(w.strike)
              << ", w_min = " << g12(w.bound.w_min) << " >= N*eta = " << g12(upper) << '\n';
        }
    }
    return ok;
}

struct Gate {
    int code = exit_ok;
    MmmScalars scalars;
};

Gate parameter_gate(const RunConfig& cfg, std::ostringstream& d) {
    const ValidationMode mode = cfg.math_mode ? ValidationMode::math : ValidationMode::strict;
    const ValidationReport report = validate_params(cfg.params, mode);
    append_validation(d, report);
    Gate g;
    if (!report.pass) {
        g.code = exit_validation_failed;
        return g;
    }
    try {
        g.scalars = mmm_scalars(cfg.params, mode);
    } catch (const PreconditionError& e) {
        d << "precondition: " << e.what() << '\n';
        g.code = exit_validation_failed;
        return g;
    }
    append_scalars(d, g.scalars);
    return g;
}

RunResult run_validate(const RunConfig& cfg) {
    std::ostringstream d;
    const Gate g = parameter_gate(cfg, d);
    RunResult r;
    r.exit_code = g.code;
    r.output = d.str();
    return r;
}

RunResult run_simulate(const RunConfig& cfg) {
    std::ostringstream d;
    RunResult r;
    const Gate g = parameter_gate(cfg, d);
    if (g.code != exit_ok) {
        r.exit_code = g.code;
        r.diagnostics = d.str();
        return r;
    }
    SimConfig sim;
    sim.params = cfg.params;
    sim.s0 = cfg.s0;
    sim.n_steps = cfg.n_steps;
    sim.horizon = cfg.horizon;
    sim.seed = cfg.seed;
    const PricePath path = simulate_path(sim);
    std::ostringstream out;
    write_price_csv(out, path);
    d << "simulated " << path.size() << " closes, seed = " << cfg.seed << '\n';
    r.output = out.str();
    r.diagnostics = d.str();
    return r;
}

RunResult run_truncation_report(const RunConfig& cfg, std::istream* prices) {
    std::ostringstream d;
    RunResult r;
    const Gate g = parameter_gate(cfg, d);
    if (g.code != exit_ok) {
        r.exit_code = g.code;
        r.diagnostics = d.str();
        return r;
    }
    append_quad(d, cfg.quad);

    std::vector<double> spots;
    std::vector<double> taus;
    if (prices != nullptr) {
        const PricePath path = read_price_csv(*prices, cfg.horizon);
        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            spots.push_back(path.prices[k]);
            taus.push_back(path.horizon - path.times[k]);
        }
    } else {
        spots.push_back(cfg.s0);
        taus.push_back(cfg.horizon / static_cast<double>(cfg.n_steps));
    }

    const FourierEngine engine(cfg.params, g.scalars, cfg.quad);
    const std::vector<Worst> worst = certify_all(engine, spots, taus, cfg.strikes);
    std::ostringstream out;
    out << "strike,tau,spot,w_min,upper_limit,satisfied\n";
    for (const Worst& w : worst)
        out << g12(w.strike) << ',' << g12(w.tau) << ',' << g12(w.spot) << ',' << g12(w.bound.w_min)
            << ',' << g12(cfg.quad.upper_limit()) << ',' << (w.bound.satisfied ? "true" : "false")
            << '\n';
    if (!report_certificates(d, worst, cfg.quad.upper_limit())) r.exit_code = exit_certificate_failed;
    r.output = out.str();
    r.diagnostics = d.str();
    return r;
}

RunResult run_hedge(const RunConfig& cfg, std::istream* prices) {
    std::ostringstream d;
    RunResult r;
    if (prices == nullptr) throw InvalidInput("hedge mode needs a price CSV");
    const PricePath path = read_price_csv(*prices, cfg.horizon);

    const Gate g = parameter_gate(cfg, d);
    if (g.code != exit_ok) {
        r.exit_code = g.code;
        r.diagnostics = d.str();
        return r;
    }
    append_quad(d, cfg.quad);

    const FourierEngine engine(cfg.params, g.scalars, cfg.quad);
    std::vector<double> spots;
    std::vector<double> taus;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        spots.push_back(path.prices[k]);
        taus.push_back(path.horizon - path.times[k]);
    }
    const std::vector<Worst> worst = certify_all(engine, spots, taus, cfg.strikes);
    if (!report_certificates(d, worst, cfg.quad.upper_limit())) {
        r.exit_code = exit_certificate_failed;
        r.diagnostics = d.str();
        return r;
    }

    HedgeOptions options;
    options.proxy = cfg.proxy;
    options.threads = cfg.threads;
    const std::vector<HedgeRecord> records = hedge_series(path, cfg.strikes, engine, options);

    for (const Worst& w : worst) {
        double imag_i = 0.0;
        double imag_h = 0.0;
        for (const HedgeRecord& rec : records) {
            if (rec.strike != w.strike) continue;
            imag_i = std::max(imag_i, std::abs(rec.imag_I));
            imag_h = std::max(imag_h, std::abs(rec.imag_H));
        }
        d << "K = " << g12(w.strike) << ": max w_min = " << g12(w.bound.w_min) << " at tau = "
          << g12(w.tau) << ", max |Im I| = " << g12(imag_i) << ", max |Im H| = " << g12(imag_h)
          << '\n';
    }
    if (doleans_series(path, g.scalars.h).degenerate)
        d << "warning: stochastic exponential E is non-positive on this path\n";
    d << "records: " << records.size() << '\n';

    std::ostringstream out;
    write_hedge_csv(out, records);
    r.output = out.str();
    r.diagnostics = d.str();
    return r;
}

}  // namespace

RunMode parse_run_mode(std::string_view name) {
    if (name == "hedge") return RunMode::hedge;
    if (name == "simulate") return RunMode::simulate;
    if (name == "validate") return RunMode::validate;
    if (name == "truncation-report") return RunMode::truncation_report;
    throw InvalidInput("unknown mode '" + std::string(name) + "'");
}

std::string_view to_string(RunMode mode) {
    switch (mode) {
        case RunMode::hedge: return "hedge";
        case RunMode::simulate: return "simulate";
        case RunMode::validate: return "validate";
        case RunMode::truncation_report: return "truncation-report";
    }
    return "?";
}

void RunConfig::validate() const {
    detail::require_finite(params);
    quad.validate();
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("horizon must be > 0");
    if (mode == RunMode::hedge || mode == RunMode::truncation_report) {
        if (strikes.empty()) throw InvalidInput("strikes must be non-empty");
    }
    for (double k : strikes)
        if (!(k > 0.0)) throw InvalidInput("strikes must be > 0");
    if (mode == RunMode::simulate) {
        if (n_steps < 1) throw InvalidInput("n_steps must be >= 1");
        if (!(s0 > 0.0)) throw InvalidInput("s0 must be > 0");
    }
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    if (key.starts_with("params.")) key.remove_prefix(7);
    else if (key.starts_with("quad.")) key.remove_prefix(5);

    if (key == "alpha") cfg.params.alpha = to_double(key, value);
    else if (key == "beta") cfg.params.beta = to_double(key, value);
    else if (key == "delta") cfg.params.delta = to_double(key, value);
    else if (key == "n_points" || key == "N") cfg.quad.n_points = static_cast<std::size_t>(to_u64(key, value));
    else if (key == "eta") cfg.quad.eta = to_double(key, value);
    else if (key == "a") cfg.quad.a = to_double(key, value);
    else if (key == "epsilon") cfg.quad.epsilon = to_double(key, value);
    else if (key == "rule") cfg.quad.rule = parse_quad_rule(value);
    else if (key == "horizon" || key == "T") cfg.horizon = to_double(key, value);
    else if (key == "strikes") cfg.strikes = to_list(key, value);
    else if (key == "input") cfg.input = std::string(value);
    else if (key == "output") cfg.output = std::string(value);
    else if (key == "mode") cfg.mode = parse_run_mode(value);
    else if (key == "math_mode") cfg.math_mode = to_bool(key, value);
    else if (key == "proxy") {
        if (value == "previous") cfg.proxy = LeftLimitProxy::previous_observation;
        else if (value == "current") cfg.proxy = LeftLimitProxy::current_observation;
        else throw InvalidInput("proxy must be 'previous' or 'current'");
    }
    else if (key == "threads") cfg.threads = static_cast<unsigned>(to_u64(key, value));
    else if (key == "s0") cfg.s0 = to_double(key, value);
    else if (key == "n_steps") cfg.n_steps = static_cast<std::size_t>(to_u64(key, value));
    else if (key == "seed") cfg.seed = to_u64(key, value);
    else throw InvalidInput("unknown config key '" + std::string(key) + "'");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view row = raw;
        if (const auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
        row = trim(row);
        if (row.empty()) continue;
        const auto eq = row.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line);
        const std::string_view key = trim(row.substr(0, eq));
        const std::string_view value = trim(row.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line);
        try {
            apply_setting(base, key, value);
        } catch (const InvalidInput& e) {
            throw ParseError(e.what(), line);
        }
    }
    return base;
}

RunResult run(const RunConfig& cfg, std::istream* prices) {
    try {
        cfg.validate();
        switch (cfg.mode) {
            case RunMode::validate: return run_validate(cfg);
            case RunMode::simulate: return run_simulate(cfg);
            case RunMode::truncation_report: return run_truncation_report(cfg, prices);
            case RunMode::hedge: return run_hedge(cfg, prices);
        }
    } catch (const ParseError& e) {
        return {exit_input_error, {}, std::string("parse error: ") + e.what() + '\n'};
    } catch (const InvalidInput& e) {
        return {exit_input_error, {}, std::string("invalid input: ") + e.what() + '\n'};
    } catch (const PreconditionError& e) {
        return {exit_validation_failed, {}, std::string("precondition: ") + e.what() + '\n'};
    } catch (const IntervalTooShort& e) {
        return {exit_certificate_failed, {}, std::string("certificate FAILED: ") + e.what() + '\n'};
    } catch (const Error& e) {
        return {exit_numerical_error, {}, std::string("error: ") + e.what() + '\n'};
    }
    return {exit_input_error, {}, "unknown mode\n"};
}

}  // namespace nighedge
