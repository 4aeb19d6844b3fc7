#include "nighedge/error.hpp"
#include "nighedge/run.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Quadratic hedging of a call under an exponential NIG model"};

    std::string config_path;
    std::string input;
    std::string output;
    std::string mode;
    std::optional<std::uint64_t> seed;
    bool math_mode = false;

    app.add_option("--config", config_path, "flat key = value config file")->check(CLI::ExistingFile);
    app.add_option("--input", input, "price CSV (time,close or date,close)");
    app.add_option("--output", output, "output CSV; stdout when omitted");
    app.add_option("--mode", mode, "hedge | simulate | validate | truncation-report")
        ->check(CLI::IsMember({"hedge", "simulate", "validate", "truncation-report"}));
    app.add_option("--seed", seed, "simulation seed");
    app.add_flag("--math-mode", math_mode, "relax the parameter gate to alpha > |beta|, delta > 0");
    CLI11_PARSE(app, argc, argv);

    nighedge::RunConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            cfg = nighedge::parse_config(in);
        }
        if (!input.empty()) cfg.input = input;
        if (!output.empty()) cfg.output = output;
        if (!mode.empty()) cfg.mode = nighedge::parse_run_mode(mode);
        if (seed) cfg.seed = *seed;
        if (math_mode) cfg.math_mode = true;
    } catch (const nighedge::ParseError& e) {
        std::cerr << config_path << ": " << e.what() << '\n';
        return nighedge::exit_input_error;
    }

    std::ifstream prices;
    bool have_prices = false;
    if (!cfg.input.empty() && cfg.mode != nighedge::RunMode::simulate) {
        prices.open(cfg.input);
        if (!prices) {
            std::cerr << "cannot open " << cfg.input << '\n';
            return nighedge::exit_input_error;
        }
        have_prices = true;
    }

    const nighedge::RunResult result = nighedge::run(cfg, have_prices ? &prices : nullptr);
    std::cerr << result.diagnostics;

    if (cfg.output.empty()) {
        std::cout << result.output;
    } else if (!result.output.empty()) {
        std::ofstream out(cfg.output, std::ios::binary);
        out << result.output;
        if (!out) {
            std::cerr << "cannot write " << cfg.output << '\n';
            return nighedge::exit_input_error;
        }
    }
    return result.exit_code;
}
