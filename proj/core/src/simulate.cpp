#include "nighedge/simulate.hpp"

#include "nighedge/error.hpp"

#include <cmath>

namespace nighedge {

void SimConfig::validate() const {
    detail::require_finite(params);
    if (!(params.delta > 0.0) || !(params.alpha > std::abs(params.beta)))
        throw InvalidInput("simulation requires delta > 0 and alpha > |beta|");
    if (n_steps < 1) throw InvalidInput("n_steps must be >= 1");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("horizon must be > 0");
    if (!(s0 > 0.0) || !std::isfinite(s0)) throw InvalidInput("s0 must be > 0");
}

double sample_ig(double mean, double shape, Rng& rng) {
    if (!(mean > 0.0) || !(shape > 0.0)) throw DomainError("sample_ig: mean and shape must be > 0");
    const double z = rng.normal();
    const double c = mean * z * z / (2.0 * shape);
    // Smaller root mean (1 + c - sqrt(c^2 + 2c)), written without cancellation.
    const double x = mean / (1.0 + c + std::sqrt(c * c + 2.0 * c));
    if (rng.uniform() * (mean + x) <= mean) return x;
    return mean * mean / x;
}

double sample_nig_increment(const NigParams& p, double dt, Rng& rng) {
    const double gamma = std::sqrt(p.alpha * p.alpha - p.beta * p.beta);
    const double di = sample_ig(dt / (p.delta * gamma), dt * dt, rng);
    return p.beta * p.delta * p.delta * di + p.delta * std::sqrt(di) * rng.normal();
}

PricePath simulate_path(const SimConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const double dt = cfg.horizon / static_cast<double>(cfg.n_steps);
    std::vector<double> prices(cfg.n_steps + 1);
    prices[0] = cfg.s0;
    double log_s = std::log(cfg.s0);
    for (std::size_t k = 1; k <= cfg.n_steps; ++k) {
        log_s += sample_nig_increment(cfg.params, dt, rng);
        prices[k] = std::exp(log_s);
    }
    return PricePath::equally_spaced(std::move(prices), cfg.horizon);
}

}  // namespace nighedge
