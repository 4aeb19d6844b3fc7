#pragma once

#include <complex>
#include <string>
#include <vector>

namespace nighedge {

using cplx = std::complex<double>;

// NIG triple. alpha: tail heaviness, beta: skew, delta: scale per unit time.
struct NigParams {
    double alpha = 0.0;
    double beta = 0.0;
    double delta = 0.0;

    // Calibrated S&P 500 set used throughout the experiments and CLI defaults.
    static constexpr NigParams spx_2016() noexcept {
        return {25.61598030765035, -1.2668546614155765, 0.40532772478162127};
    }
};

// strict: alpha > 5/2, -3/2 < beta <= -1/2, beta + 4 < alpha.
// math:   only alpha > |beta| and delta > 0 (for oracle experiments).
enum class ValidationMode { strict, math };

struct ValidationReport {
    bool pass = false;
    ValidationMode mode = ValidationMode::strict;
    std::vector<std::string> violations;

    // Closed-form mu^S = W(0,1) and C_nu = W(0,2) - 2 W(0,1); NaN when the
    // exponential moments do not exist for this parameter set.
    bool closed_forms_available = false;
    double mu_s = 0.0;
    double c_nu = 0.0;
    bool mu_s_nonpositive = false;
    bool c_nu_positive = false;
    bool mu_s_above_minus_c_nu = false;
};

// Point (v, a) at which the Levy exponent is evaluated along u = a + i v.
// Admissible: v >= 0 with a in (3/2, 2], the shifted range (5/2, 3], or
// exactly (v, a) = (0, 1).
struct DampedArg {
    double v = 0.0;
    double a = 0.0;

    bool admissible() const noexcept;
};

struct AuxTerms {
    double m1 = 0.0;
    double m2 = 0.0;
    double b = 0.0;
};

ValidationReport validate_params(const NigParams& p, ValidationMode mode = ValidationMode::strict);

AuxTerms aux_terms(const DampedArg& arg, const NigParams& p);

/// Closed form of \int (e^{(iv+a)x} - 1) nu(dx) for the NIG Levy measure.
///
/// Throws DomainError when (v, a) is not admissible or when the exponential
/// moment e^{a x} is not integrable (alpha^2 <= (a + beta)^2).
cplx w_transform(const DampedArg& arg, const NigParams& p);

inline cplx w_transform(double v, double a, const NigParams& p) { return w_transform({v, a}, p); }

/// Modified Bessel function of the second kind, order 1. Series for z <= 2,
/// Steed/Temme continued fraction above. Throws DomainError for z <= 0.
double bessel_k1(double z);

/// Levy density (delta alpha / pi) e^{beta x} K1(alpha |x|) / |x|.
double levy_density(double x, const NigParams& p);

/// \int x nu(dx) = delta beta / sqrt(alpha^2 - beta^2) (principal value).
double levy_mean(const NigParams& p);

namespace detail {

// sqrt of a quantity that is nonnegative in exact arithmetic; residue down
// to -1e-13 is clamped to zero, anything below is a DomainError.
double sqrt_nonneg(double x);

void require_finite(const NigParams& p);

}  // namespace detail

}  // namespace nighedge
