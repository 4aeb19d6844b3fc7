#pragma once

#include "nighedge/mmm.hpp"
#include "nighedge/nig.hpp"
#include "nighedge/quad.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nighedge {

// Discrete observations (t_k, S_{t_k}) on [0, T].
struct PricePath {
    std::vector<double> times;   // years, strictly increasing, times[0] >= 0
    std::vector<double> prices;  // > 0
    double horizon = 1.0;        // maturity T

    std::size_t size() const noexcept { return prices.size(); }

    // Throws InvalidInput on any violated invariant.
    void validate() const;

    // t_k = k T / (n - 1) for n prices.
    static PricePath equally_spaced(std::vector<double> prices, double horizon);
};

// Which observation stands in for S_{t_k-} when xi_{t_k} enters the MVH
// correction sum.
enum class LeftLimitProxy {
    previous_observation,  // S_{t_{k-1}}, time to maturity T - t_{k-1}
    current_observation,   // S_{t_k},     time to maturity T - t_k
};

struct HedgeOptions {
    LeftLimitProxy proxy = LeftLimitProxy::previous_observation;
    unsigned threads = 0;  // 0: std::thread::hardware_concurrency()
};

// Strategy values for the rebalance date t_k, built at t_{k-1} from
// S_{t_0..t_{k-1}}. H and E refer to the construction time t_{k-1}.
struct HedgeRecord {
    double t = 0.0;
    double strike = 0.0;
    double xi = 0.0;
    double theta = 0.0;
    double H = 0.0;
    double E = 1.0;

    // Diagnostics for the Fourier evaluation behind xi and H.
    double tau = 0.0;
    double w_min = 0.0;
    double imag_I = 0.0;
    double imag_H = 0.0;
};

struct DoleansSeries {
    std::vector<double> values;  // E_{t_0}, ..., E_{t_n}
    bool degenerate = false;     // some E_{t_k} <= 0
};

/// xi = I(s, t, K) / (s C_nu).
double lrm_xi(double spot, double tau, double strike, const QuadConfig& cfg, const NigParams& p,
              const MmmScalars& s);
double lrm_xi(const FourierEngine& engine, double spot, double tau, double strike);

/// E_{t_0} = 1, E_{t_{k+1}} = E_{t_k} (1 - h dS_{t_{k+1}} / S_{t_k}).
DoleansSeries doleans_series(const PricePath& path, double h);

/// Discrete-data MVH ratio for the date following the last observation of
/// `observed`. With a single observation the correction sum is empty and
/// the result equals xi.
double mvh_theta(const PricePath& observed, double strike, const FourierEngine& engine,
                 const HedgeOptions& options = {});

/// One record per (rebalance date t_1..t_n, strike), sorted by (strike, t).
/// Record k depends only on S_{t_0..t_{k-1}}.
std::vector<HedgeRecord> hedge_series(const PricePath& path, std::span<const double> strikes,
                                      const FourierEngine& engine, const HedgeOptions& options = {});

std::vector<HedgeRecord> hedge_series(const PricePath& path, std::span<const double> strikes,
                                      const QuadConfig& cfg, const NigParams& p, const MmmScalars& s,
                                      const HedgeOptions& options = {});

}  // namespace nighedge
