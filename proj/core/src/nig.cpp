#include "nighedge/nig.hpp"

#include "nighedge/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nighedge {

namespace detail {

double sqrt_nonneg(double x) {
    if (x >= 0.0) return std::sqrt(x);
    if (x >= -1e-13) return 0.0;
    throw DomainError("square root of negative quantity " + std::to_string(x));
}

void require_finite(const NigParams& p) {
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.delta))
        throw InvalidInput("NIG parameters must be finite");
}

}  // namespace detail

bool DampedArg::admissible() const noexcept {
    if (!(v >= 0.0) || !std::isfinite(v) || !std::isfinite(a)) return false;
    if (a > 1.5 && a <= 2.0) return true;
    if (a > 2.5 && a <= 3.0) return true;
    return v == 0.0 && a == 1.0;
}

ValidationReport validate_params(const NigParams& p, ValidationMode mode) {
    detail::require_finite(p);

    ValidationReport r;
    r.mode = mode;
    const double a = p.alpha;
    const double b = p.beta;

    if (!(p.delta > 0.0)) r.violations.push_back("delta > 0");
    if (!(a > std::abs(b))) r.violations.push_back("alpha > |beta|");
    if (mode == ValidationMode::strict) {
        if (!(a > 2.5)) r.violations.push_back("alpha > 5/2");
        if (!(b > -1.5 && b <= -0.5)) r.violations.push_back("-3/2 < beta <= -1/2");
        if (!(b + 4.0 < a)) r.violations.push_back("beta + 4 < alpha");
    }
    r.pass = r.violations.empty();

    // W(0,1) and W(0,2) need e^{x} and e^{2x} moments: alpha > |1+beta|, |2+beta|.
    r.closed_forms_available = p.delta > 0.0 && a > std::abs(b) && a > std::abs(1.0 + b) &&
                               a > std::abs(2.0 + b);
    if (r.closed_forms_available) {
        const double w01 = w_transform({0.0, 1.0}, p).real();
        const double w02 = w_transform({0.0, 2.0}, p).real();
        r.mu_s = w01;
        r.c_nu = w02 - 2.0 * w01;
        r.mu_s_nonpositive = r.mu_s <= 0.0;
        r.c_nu_positive = r.c_nu > 0.0;
        r.mu_s_above_minus_c_nu = r.mu_s > -r.c_nu;
    } else {
        r.mu_s = std::nan("");
        r.c_nu = std::nan("");
    }
    return r;
}

AuxTerms aux_terms(const DampedArg& arg, const NigParams& p) {
    const double alpha2 = p.alpha * p.alpha;
    const double ab = arg.a + p.beta;
    return {
        (arg.v * arg.v + alpha2 - ab * ab) / alpha2,
        (alpha2 - p.beta * p.beta) / alpha2,
        2.0 * ab * arg.v / alpha2,
    };
}

cplx w_transform(const DampedArg& arg, const NigParams& p) {
    if (!arg.admissible())
        throw DomainError("w_transform: inadmissible (v, a) = (" + std::to_string(arg.v) + ", " +
                          std::to_string(arg.a) + ")");
    const double ab = arg.a + p.beta;
    if (!(p.alpha * p.alpha > ab * ab) || !(p.alpha > std::abs(p.beta)))
        throw DomainError("w_transform: exponential moment of order a=" + std::to_string(arg.a) +
                          " does not exist (alpha^2 <= (a+beta)^2)");

    const AuxTerms t = aux_terms(arg, p);
    if (t.b < 0.0) throw DomainError("w_transform: b(v,a) < 0");
    // m1 >= (alpha^2 - (a+beta)^2) / alpha^2 > 0 here.
    const double m1 = t.m1;
    const double r = std::hypot(m1, t.b);
    // r + m1 and r - m1 = b^2 / (r + m1); the quotient avoids cancellation
    // when v is large and b^2 << m1^2.
    const double r_plus = r + m1;
    const double r_minus = t.b * t.b / r_plus;
    const double scale = p.delta * p.alpha / std::numbers::sqrt2;
    const double re = -std::sqrt(r_plus) + std::sqrt(2.0 * t.m2);
    const double im = detail::sqrt_nonneg(r_minus);
    return {scale * re, scale * im};
}

double levy_density(double x, const NigParams& p) {
    if (x == 0.0) throw DomainError("levy_density: singular at x = 0");
    const double ax = std::abs(x);
    return p.delta * p.alpha / std::numbers::pi * std::exp(p.beta * x) * bessel_k1(p.alpha * ax) / ax;
}

double levy_mean(const NigParams& p) {
    if (!(p.alpha > std::abs(p.beta))) throw DomainError("levy_mean: requires alpha > |beta|");
    return p.delta * p.beta / std::sqrt(p.alpha * p.alpha - p.beta * p.beta);
}

}  // namespace nighedge
