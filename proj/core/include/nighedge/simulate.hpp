#pragma once

#include "nighedge/hedging.hpp"
#include "nighedge/nig.hpp"

#include <cstddef>
#include <cstdint>
#include <random>

namespace nighedge {

struct SimConfig {
    NigParams params = NigParams::spx_2016();
    double s0 = 2350.0;
    std::size_t n_steps = 249;
    double horizon = 1.0;
    std::uint64_t seed = 42;

    void validate() const;
};

// Per-path random state. Deterministic for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Inverse Gaussian variate with the given mean and shape, by the
/// transformation-with-multiple-roots method (one normal, one uniform).
double sample_ig(double mean, double shape, Rng& rng);

/// Increment of the NIG process over a step of length dt:
/// beta delta^2 dI + delta sqrt(dI) Z with dI ~ IG(mean dt / (delta gamma), shape dt^2),
/// gamma = sqrt(alpha^2 - beta^2).
double sample_nig_increment(const NigParams& p, double dt, Rng& rng);

/// S_{t_{k+1}} = S_{t_k} exp(dL) on an equally spaced grid of n_steps steps.
PricePath simulate_path(const SimConfig& cfg);

}  // namespace nighedge
