#include "nighedge/hedging.hpp"

#include "nighedge/error.hpp"
#include "nighedge/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nighedge {

namespace {

struct StrategySeries {
    std::vector<double> xi;     // record m = 1..D at index m-1
    std::vector<double> theta;
};

// Fourier values at the construction dates t_0..t_{count-1}, all strikes.
std::vector<std::vector<StrikeValues>> evaluate_dates(const PricePath& path, std::size_t count,
                                                      std::span<const double> strikes,
                                                      const FourierEngine& engine, unsigned threads) {
    std::vector<std::vector<StrikeValues>> out(count);
    detail::parallel_for(count, threads, [&](std::size_t d) {
        const double tau = path.horizon - path.times[d];
        out[d] = engine.evaluate(path.prices[d], tau, strikes);
    });
    return out;
}

// Sequential reduction: xi from I, then the running MVH correction sum.
StrategySeries assemble(const PricePath& path, const std::vector<std::vector<StrikeValues>>& dates,
                        std::size_t strike_index, const MmmScalars& s, const DoleansSeries& e,
                        LeftLimitProxy proxy) {
    const std::size_t count = dates.size();
    std::vector<double> xi_at(count);
    std::vector<double> h_at(count);
    for (std::size_t d = 0; d < count; ++d) {
        const StrikeValues& v = dates[d][strike_index];
        xi_at[d] = v.I.value / (path.prices[d] * s.c_nu);
        h_at[d] = v.H.value;
    }

    StrategySeries out;
    out.xi.resize(count);
    out.theta.resize(count);
    double correction_sum = 0.0;
    for (std::size_t m = 1; m <= count; ++m) {
        if (m >= 2) {
            const std::size_t j = m - 1;
            const double dH = h_at[j] - h_at[j - 1];
            const double dS = path.prices[j] - path.prices[j - 1];
            const double xi_j = proxy == LeftLimitProxy::previous_observation ? xi_at[j - 1] : xi_at[j];
            correction_sum += (dH - xi_j * dS) / e.values[j];
        }
        const std::size_t n = m - 1;
        out.xi[m - 1] = xi_at[n];
        out.theta[m - 1] = xi_at[n] + s.h * e.values[n] / path.prices[n] * correction_sum;
    }
    return out;
}

}  // namespace

void PricePath::validate() const {
    if (prices.empty()) throw InvalidInput("price path is empty");
    if (times.size() != prices.size()) throw InvalidInput("price path: times and prices differ in length");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("price path: horizon must be > 0");
    if (!(times[0] >= 0.0)) throw InvalidInput("price path: first time must be >= 0");
    for (std::size_t k = 0; k < prices.size(); ++k) {
        if (!(prices[k] > 0.0) || !std::isfinite(prices[k]))
            throw InvalidInput("price path: non-positive price at index " + std::to_string(k));
        if (!std::isfinite(times[k])) throw InvalidInput("price path: non-finite time");
        if (k > 0 && !(times[k] > times[k - 1]))
            throw InvalidInput("price path: times not strictly increasing at index " + std::to_string(k));
    }
    if (times.back() > horizon) throw InvalidInput("price path: observation after the horizon");
}

PricePath PricePath::equally_spaced(std::vector<double> prices, double horizon) {
    PricePath path;
    const std::size_t n = prices.size();
    path.times.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        path.times[k] = n > 1 ? horizon * static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
    if (n > 1) path.times[n - 1] = horizon;
    path.prices = std::move(prices);
    path.horizon = horizon;
    return path;
}

double lrm_xi(const FourierEngine& engine, double spot, double tau, double strike) {
    return engine.compute_I(spot, tau, strike).value / (spot * engine.scalars().c_nu);
}

double lrm_xi(double spot, double tau, double strike, const QuadConfig& cfg, const NigParams& p,
              const MmmScalars& s) {
    return lrm_xi(FourierEngine(p, s, cfg), spot, tau, strike);
}

DoleansSeries doleans_series(const PricePath& path, double h) {
    path.validate();
    DoleansSeries e;
    e.values.resize(path.size());
    e.values[0] = 1.0;
    for (std::size_t k = 1; k < path.size(); ++k) {
        const double dS = path.prices[k] - path.prices[k - 1];
        e.values[k] = e.values[k - 1] * (1.0 - h * dS / path.prices[k - 1]);
        if (!(e.values[k] > 0.0)) e.degenerate = true;
    }
    return e;
}

double mvh_theta(const PricePath& observed, double strike, const FourierEngine& engine,
                 const HedgeOptions& options) {
    observed.validate();
    if (!(observed.horizon - observed.times.back() > 0.0))
        throw DomainError("mvh_theta: last observation at maturity (tau = 0)");
    const double strikes[] = {strike};
    const auto dates = evaluate_dates(observed, observed.size(), strikes, engine, options.threads);
    const DoleansSeries e = doleans_series(observed, engine.scalars().h);
    return assemble(observed, dates, 0, engine.scalars(), e, options.proxy).theta.back();
}

std::vector<HedgeRecord> hedge_series(const PricePath& path, std::span<const double> strikes,
                                      const FourierEngine& engine, const HedgeOptions& options) {
    path.validate();
    for (double k : strikes)
        if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput("strikes must be finite and > 0");

    const std::size_t count = path.size() - 1;
    const auto dates = evaluate_dates(path, count, strikes, engine, options.threads);
    const DoleansSeries e = doleans_series(path, engine.scalars().h);

    std::vector<HedgeRecord> records;
    records.reserve(count * strikes.size());
    for (std::size_t k = 0; k < strikes.size(); ++k) {
        const StrategySeries series = assemble(path, dates, k, engine.scalars(), e, options.proxy);
        for (std::size_t m = 1; m <= count; ++m) {
            const StrikeValues& v = dates[m - 1][k];
            HedgeRecord r;
            r.t = path.times[m];
            r.strike = strikes[k];
            r.xi = series.xi[m - 1];
            r.theta = series.theta[m - 1];
            r.H = v.H.value;
            r.E = e.values[m - 1];
            r.tau = path.horizon - path.times[m - 1];
            r.w_min = v.bound.w_min;
            r.imag_I = v.I.imag_part;
            r.imag_H = v.H.imag_part;
            records.push_back(r);
        }
    }
    std::stable_sort(records.begin(), records.end(), [](const HedgeRecord& a, const HedgeRecord& b) {
        return a.strike != b.strike ? a.strike < b.strike : a.t < b.t;
    });
    return records;
}

std::vector<HedgeRecord> hedge_series(const PricePath& path, std::span<const double> strikes,
                                      const QuadConfig& cfg, const NigParams& p, const MmmScalars& s,
                                      const HedgeOptions& options) {
    return hedge_series(path, strikes, FourierEngine(p, s, cfg), options);
}

}  // namespace nighedge
