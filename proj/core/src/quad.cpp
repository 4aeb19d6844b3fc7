#include "nighedge/quad.hpp"

#include "nighedge/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>

namespace nighedge {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW's planner is not re-entrant.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be finite and > 0");
}

cplx damped_denominator(double v, double a) {
    const cplx u{a, v};
    return u * (u - 1.0);
}

cplx w_factor(double v, double a, const NigParams& p) {
    return w_transform({v, a + 1.0}, p) - w_transform({v, a}, p) - w_transform({0.0, 1.0}, p);
}

// K^{1-u} s^{u} phi_tau(v - ia) with u = a + iv, assembled in the exponent.
cplx transform_kernel(cplx log_phi, double v, double a, double tau, double log_spot, double log_strike) {
    const cplx exponent =
        tau * log_phi + cplx{a * log_spot + (1.0 - a) * log_strike, v * (log_spot - log_strike)};
    return std::exp(exponent);
}

}  // namespace

QuadRule parse_quad_rule(std::string_view name) {
    if (name == "rectangle") return QuadRule::rectangle;
    if (name == "trapezoid") return QuadRule::trapezoid;
    if (name == "simpson") return QuadRule::simpson;
    throw InvalidInput("unknown quadrature rule '" + std::string(name) + "'");
}

std::string_view to_string(QuadRule rule) {
    switch (rule) {
        case QuadRule::rectangle: return "rectangle";
        case QuadRule::trapezoid: return "trapezoid";
        case QuadRule::simpson: return "simpson";
    }
    return "?";
}

void QuadConfig::validate() const {
    if (n_points < 2 || !std::has_single_bit(n_points))
        throw InvalidInput("n_points must be a power of two >= 2");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidInput("eta must be > 0");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidInput("epsilon must be > 0");
    if (!(a > 1.5 && a <= 2.0)) throw InvalidInput("damping a must lie in (3/2, 2]");
}

TruncationBound min_upper_limit(double epsilon, double tau, double strike, double spot, double a,
                                const NigParams& p, const MmmScalars& s, double upper_limit) {
    require_positive(epsilon, "epsilon");
    if (!(tau > 0.0)) throw DomainError("min_upper_limit: tau must be > 0 (t = T excluded)");
    require_positive(strike, "strike");
    require_positive(spot, "spot");

    const double ab = a + p.beta;
    const double ab1 = a + 1.0 + p.beta;
    const double bound_p = p.alpha * p.alpha - ab * ab + 2.0 * ab1 * ab1;
    const double log_A = 0.5 * std::log(2.0) + (1.0 - a) * std::log(strike) + a * std::log(spot) +
                         log_envelope_C(tau, a, p, s) + std::log(2.0 + std::sqrt(bound_p)) -
                         std::log(kPi * tau * epsilon);

    TruncationBound b;
    b.w_min = std::max(1.0 + 1e-9, log_A / (tau * p.delta));
    b.satisfied = upper_limit > b.w_min;
    return b;
}

TruncationBound min_upper_limit(const QuadConfig& cfg, double tau, double strike, double spot,
                                const NigParams& p, const MmmScalars& s) {
    return min_upper_limit(cfg.epsilon, tau, strike, spot, cfg.a, p, s, cfg.upper_limit());
}

cplx integrand_H(double v, double a, double strike, double spot, double tau, const NigParams& p,
                 const MmmScalars& s) {
    const cplx u{a, v};
    const cplx phi = char_fn({{v, a}, tau}, p, s);
    return std::pow(strike, 1.0 - u) * phi * std::pow(spot, u) / damped_denominator(v, a);
}

cplx integrand_I(double v, double a, double strike, double spot, double tau, const NigParams& p,
                 const MmmScalars& s) {
    return w_factor(v, a, p) * integrand_H(v, a, strike, spot, tau, p, s);
}

std::size_t BatchResult::index_of(double strike) const {
    if (!(strike > 0.0) || strikes.empty() || strike < strikes.front() || strike > strikes.back())
        throw RangeError("strike " + std::to_string(strike) + " outside the log-strike grid");
    const double pos = (std::log(strike) - log_strike_origin) / log_strike_step;
    const auto idx = static_cast<std::size_t>(std::llround(pos));
    return std::min(idx, strikes.size() - 1);
}

FourierEngine::FourierEngine(const NigParams& p, const MmmScalars& s, const QuadConfig& cfg)
    : p_(p), s_(s), cfg_(cfg) {
    cfg_.validate();
    const std::size_t n = cfg_.n_points;
    weight_.resize(n);
    w_factor_.resize(n);
    log_phi_.resize(n);
    inv_denom_.resize(n);

    const double eta = cfg_.eta;
    const double a = cfg_.a;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = static_cast<double>(j) * eta;
        switch (cfg_.rule) {
            case QuadRule::rectangle: weight_[j] = eta; break;
            case QuadRule::trapezoid: weight_[j] = j == 0 ? 0.5 * eta : eta; break;
            case QuadRule::simpson:
                weight_[j] = eta / 3.0 * (3.0 + ((j % 2 == 1) ? 1.0 : -1.0) - (j == 0 ? 1.0 : 0.0));
                break;
        }
        w_factor_[j] = w_factor(v, a, p_);
        log_phi_[j] = log_char_exponent({v, a}, p_, s_);
        inv_denom_[j] = 1.0 / damped_denominator(v, a);
    }
}

TruncationBound FourierEngine::certify(double spot, double tau, double strike) const {
    return min_upper_limit(cfg_, tau, strike, spot, p_, s_);
}

void FourierEngine::require_query(double spot, double tau, double strike) const {
    const TruncationBound b = certify(spot, tau, strike);
    if (!b.satisfied) throw IntervalTooShort(b.w_min, cfg_.upper_limit(), tau, strike);
}

std::vector<StrikeValues> FourierEngine::evaluate(double spot, double tau,
                                                  std::span<const double> strikes) const {
    std::vector<StrikeValues> out(strikes.size());
    std::vector<double> log_k(strikes.size());
    for (std::size_t k = 0; k < strikes.size(); ++k) {
        out[k].strike = strikes[k];
        out[k].bound = certify(spot, tau, strikes[k]);
        if (!out[k].bound.satisfied)
            throw IntervalTooShort(out[k].bound.w_min, cfg_.upper_limit(), tau, strikes[k]);
        log_k[k] = std::log(strikes[k]);
    }

    const double log_s = std::log(spot);
    const double a = cfg_.a;
    std::vector<cplx> sum_i(strikes.size());
    std::vector<cplx> sum_h(strikes.size());
    for (std::size_t j = 0; j < cfg_.n_points; ++j) {
        const double v = static_cast<double>(j) * cfg_.eta;
        const cplx common = inv_denom_[j] * weight_[j];
        for (std::size_t k = 0; k < strikes.size(); ++k) {
            const cplx h_term = transform_kernel(log_phi_[j], v, a, tau, log_s, log_k[k]) * common;
            sum_h[k] += h_term;
            sum_i[k] += h_term * w_factor_[j];
        }
    }
    for (std::size_t k = 0; k < strikes.size(); ++k) {
        out[k].I = {sum_i[k].real() / kPi, sum_i[k].imag() / kPi};
        out[k].H = {sum_h[k].real() / kPi, sum_h[k].imag() / kPi};
    }
    return out;
}

FourierValue FourierEngine::compute_I(double spot, double tau, double strike) const {
    return evaluate(spot, tau, std::span<const double>(&strike, 1)).front().I;
}

FourierValue FourierEngine::compute_H(double spot, double tau, double strike) const {
    return evaluate(spot, tau, std::span<const double>(&strike, 1)).front().H;
}

BatchResult FourierEngine::batch_fft(double spot, double tau, double center_strike) const {
    require_positive(spot, "spot");
    require_positive(center_strike, "center strike");
    if (!(tau > 0.0)) throw DomainError("batch_fft: tau must be > 0");

    const std::size_t n = cfg_.n_points;
    const double a = cfg_.a;
    const double lambda = 2.0 * kPi / (static_cast<double>(n) * cfg_.eta);
    const double k0 = std::log(center_strike) - 0.5 * static_cast<double>(n) * lambda;
    const double log_s = std::log(spot);

    std::vector<cplx> in_h(n);
    std::vector<cplx> in_i(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double v = static_cast<double>(j) * cfg_.eta;
        // K^{1-u} is split as e^{(1-a) k_u} (applied after the transform) and
        // e^{-i v k0} e^{-2 pi i j u / N}.
        const cplx h_term = transform_kernel(log_phi_[j], v, a, tau, log_s, k0) *
                            std::exp(cplx{-(1.0 - a) * k0, 0.0}) * inv_denom_[j] * weight_[j];
        in_h[j] = h_term;
        in_i[j] = h_term * w_factor_[j];
    }

    std::vector<cplx> out_h(n);
    std::vector<cplx> out_i(n);
    {
        std::lock_guard lock(fftw_planner_mutex());
        auto* ih = reinterpret_cast<fftw_complex*>(in_h.data());
        auto* oh = reinterpret_cast<fftw_complex*>(out_h.data());
        auto* ii = reinterpret_cast<fftw_complex*>(in_i.data());
        auto* oi = reinterpret_cast<fftw_complex*>(out_i.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), ih, oh, FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute_dft(plan, ih, oh);
        fftw_execute_dft(plan, ii, oi);
        fftw_destroy_plan(plan);
    }

    BatchResult r;
    r.log_strike_origin = k0;
    r.log_strike_step = lambda;
    r.strikes.resize(n);
    r.I.resize(n);
    r.H.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        const double k = k0 + static_cast<double>(u) * lambda;
        const double damp = std::exp((1.0 - a) * k) / kPi;
        r.strikes[u] = std::exp(k);
        r.H[u] = damp * out_h[u].real();
        r.I[u] = damp * out_i[u].real();
    }
    return r;
}

BatchResult FourierEngine::batch_fft(double spot, double tau, std::span<const double> strikes) const {
    if (strikes.empty()) throw InvalidInput("batch_fft: no strikes requested");
    const auto [lo, hi] = std::minmax_element(strikes.begin(), strikes.end());
    require_positive(*lo, "strike");
    for (double k : strikes) require_query(spot, tau, k);

    const double center = std::sqrt(*lo * *hi);
    // The grid spans N * lambda = 2 pi / eta in log-strike.
    const double half_quarter = 2.0 * kPi / cfg_.eta / 8.0;
    if (std::log(*hi / center) >= half_quarter)
        throw RangeError("requested strikes span more than the middle quarter of the log-strike grid");
    return batch_fft(spot, tau, center);
}

double compute_I(double spot, double tau, double strike, const QuadConfig& cfg, const NigParams& p,
                 const MmmScalars& s) {
    return FourierEngine(p, s, cfg).compute_I(spot, tau, strike).value;
}

double compute_H(double spot, double tau, double strike, const QuadConfig& cfg, const NigParams& p,
                 const MmmScalars& s) {
    return FourierEngine(p, s, cfg).compute_H(spot, tau, strike).value;
}

BatchResult batch_fft(double spot, double tau, const QuadConfig& cfg, const NigParams& p,
                      const MmmScalars& s) {
    return FourierEngine(p, s, cfg).batch_fft(spot, tau, spot);
}

}  // namespace nighedge
