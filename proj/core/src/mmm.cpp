#include "nighedge/mmm.hpp"

#include "nighedge/error.hpp"

#include <cmath>
#include <string>

namespace nighedge {

namespace {

void require_tau(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw DomainError("time to maturity must be finite and > 0, got " + std::to_string(tau));
}

double m2(double alpha, double beta) { return (alpha * alpha - beta * beta) / (alpha * alpha); }

}  // namespace

MmmScalars mmm_scalars(const NigParams& p, ValidationMode mode) {
    const ValidationReport report = validate_params(p, mode);
    if (!report.pass) {
        std::string msg = "mmm_scalars: parameter validation failed:";
        for (const auto& v : report.violations) msg += " [" + v + "]";
        throw PreconditionError(msg);
    }
    if (!report.closed_forms_available)
        throw PreconditionError("mmm_scalars: exponential moments of order 1 and 2 do not exist");

    MmmScalars s;
    s.mu_s = report.mu_s;
    s.c_nu = report.c_nu;
    if (!(s.c_nu > 0.0) || !(s.mu_s <= 0.0) || !(s.mu_s > -s.c_nu))
        throw PreconditionError("mmm_scalars: requires mu_S <= 0 and mu_S > -C_nu");
    s.h = s.mu_s / s.c_nu;

    const MmmComponents c = mmm_components(p, s);
    double mean = levy_mean(c.original);
    double w01 = w_transform({0.0, 1.0}, c.original).real();
    if (c.shifted) {
        mean += levy_mean(*c.shifted);
        w01 += w_transform({0.0, 1.0}, *c.shifted).real();
    }
    s.mu_star = mean - w01;
    return s;
}

MmmComponents mmm_components(const NigParams& p, const MmmScalars& s) {
    MmmComponents c;
    c.original = {p.alpha, p.beta, (1.0 + s.h) * p.delta};
    if (s.h != 0.0) c.shifted = NigParams{p.alpha, 1.0 + p.beta, -s.h * p.delta};
    return c;
}

double theta(double x, const MmmScalars& s) { return s.h * std::expm1(x); }

double levy_density_star(double x, const NigParams& p, const MmmScalars& s) {
    const MmmComponents c = mmm_components(p, s);
    double d = levy_density(x, c.original);
    if (c.shifted) d += levy_density(x, *c.shifted);
    return d;
}

double compensated_drift(const NigParams& p, const MmmScalars& s) {
    const MmmComponents c = mmm_components(p, s);
    double d = s.mu_star - levy_mean(c.original);
    if (c.shifted) d -= levy_mean(*c.shifted);
    return d;
}

cplx log_char_exponent(const DampedArg& arg, const NigParams& p, const MmmScalars& s) {
    const MmmComponents c = mmm_components(p, s);
    const cplx u{arg.a, arg.v};
    cplx w = w_transform(arg, c.original);
    if (c.shifted) w += w_transform(arg, *c.shifted);
    return u * compensated_drift(p, s) + w;
}

cplx char_fn(const CharQuery& q, const NigParams& p, const MmmScalars& s) {
    require_tau(q.tau);
    return std::exp(q.tau * log_char_exponent(q.arg, p, s));
}

double log_envelope_C(double tau, double a, const NigParams& p, const MmmScalars& s) {
    require_tau(tau);
    if (!(a > 1.5 && a <= 2.0)) throw DomainError("envelope_C: damping a must lie in (3/2, 2]");
    double decay = (1.0 + s.h) * std::sqrt(m2(p.alpha, p.beta));
    if (s.h != 0.0) decay -= s.h * std::sqrt(m2(p.alpha, 1.0 + p.beta));
    return tau * a * compensated_drift(p, s) + tau * p.delta * p.alpha * decay;
}

double envelope_C(double tau, double a, const NigParams& p, const MmmScalars& s) {
    return std::exp(log_envelope_C(tau, a, p, s));
}

}  // namespace nighedge
