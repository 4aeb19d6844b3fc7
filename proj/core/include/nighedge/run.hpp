#pragma once

#include "nighedge/hedging.hpp"
#include "nighedge/nig.hpp"
#include "nighedge/quad.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nighedge {

enum class RunMode { hedge, simulate, validate, truncation_report };

RunMode parse_run_mode(std::string_view name);
std::string_view to_string(RunMode mode);

// Process exit codes of `run`.
enum ExitCode : int {
    exit_ok = 0,
    exit_validation_failed = 1,   // parameter gate or measure-change precondition
    exit_certificate_failed = 2,  // truncation certificate for some (tau, K)
    exit_input_error = 3,         // malformed config or CSV
    exit_numerical_error = 4,
};

struct RunConfig {
    NigParams params = NigParams::spx_2016();
    QuadConfig quad{};
    double horizon = 1.0;
    std::vector<double> strikes{2300.0, 2350.0, 2400.0};
    std::string input;
    std::string output;
    RunMode mode = RunMode::hedge;

    bool math_mode = false;
    LeftLimitProxy proxy = LeftLimitProxy::previous_observation;
    unsigned threads = 0;

    // simulate mode
    double s0 = 2350.0;
    std::size_t n_steps = 249;
    std::uint64_t seed = 42;

    // Throws InvalidInput.
    void validate() const;
};

/// Applies one `key = value` setting. Keys are the RunConfig field names,
/// with params and quad flattened (alpha, beta, delta, n_points, eta, a,
/// epsilon, rule); the dotted forms params.alpha, quad.eta, ... are also
/// accepted. Throws InvalidInput for unknown keys or bad values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat `key = value` text, one per line; '#' starts a comment. Keys not
/// present keep their defaults. Throws ParseError with the line number.
RunConfig parse_config(std::istream& in, RunConfig base = {});

struct RunResult {
    int exit_code = exit_ok;
    std::string output;       // CSV (hedge, simulate, truncation-report) or report (validate)
    std::string diagnostics;  // human-readable, deterministic
};

/// Runs one mode. `prices` is required for hedge mode; truncation-report
/// uses it when given and otherwise checks s0 at the smallest step tau.
/// Never throws for user-facing failures; they are mapped to exit codes.
RunResult run(const RunConfig& cfg, std::istream* prices);

}  // namespace nighedge
