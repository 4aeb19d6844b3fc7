#pragma once

#include "nighedge/nig.hpp"

#include <optional>

namespace nighedge {

// Measure-change scalars under the minimal martingale measure P*, all per
// unit time.
struct MmmScalars {
    double mu_s = 0.0;     // \int (e^x - 1) nu(dx)
    double c_nu = 0.0;     // \int (e^x - 1)^2 nu(dx)
    double h = 0.0;        // mu_s / c_nu, in (-1, 0]
    double mu_star = 0.0;  // \int (x - e^x + 1) nu*(dx)
};

// nu* = nu[alpha, beta, (1+h) delta] + nu[alpha, 1+beta, -h delta].
// The shifted component is absent when h == 0.
struct MmmComponents {
    NigParams original;
    std::optional<NigParams> shifted;
};

struct CharQuery {
    DampedArg arg;
    double tau = 0.0;  // time to maturity T - t, > 0
};

MmmScalars mmm_scalars(const NigParams& p, ValidationMode mode = ValidationMode::strict);

MmmComponents mmm_components(const NigParams& p, const MmmScalars& s);

// Girsanov kernel h (e^x - 1).
double theta(double x, const MmmScalars& s);

// Sum of the component densities of nu*; equals (1 - theta_x) levy_density(x).
double levy_density_star(double x, const NigParams& p, const MmmScalars& s);

// Drift of L under P* net of the component Levy means:
// mu* - (1+h) delta beta / sqrt(alpha^2 - beta^2) + h delta (1+beta) / sqrt(alpha^2 - (1+beta)^2).
double compensated_drift(const NigParams& p, const MmmScalars& s);

/// log phi_tau(v - i a) / tau, i.e. the P*-Levy exponent at u = a + i v.
cplx log_char_exponent(const DampedArg& arg, const NigParams& p, const MmmScalars& s);

/// phi_tau(v - i a) = E*[exp((i v + a) L_tau)]. Throws DomainError for tau <= 0.
cplx char_fn(const CharQuery& q, const NigParams& p, const MmmScalars& s);

/// C(t) with |phi_tau(v - i a)| <= C e^{-tau delta v} for all v >= 0.
double envelope_C(double tau, double a, const NigParams& p, const MmmScalars& s);

// log C, for comparisons where C e^{-tau delta v} underflows.
double log_envelope_C(double tau, double a, const NigParams& p, const MmmScalars& s);

}  // namespace nighedge
