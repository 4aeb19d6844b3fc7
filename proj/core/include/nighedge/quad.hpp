#pragma once

#include "nighedge/mmm.hpp"
#include "nighedge/nig.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nighedge {

// Weighting of the uniform frequency grid v_j = j * eta, j = 0..N-1.
//   rectangle: w_j = eta (left endpoint sum, literally)
//   trapezoid: w_0 = eta/2, w_j = eta otherwise
//   simpson:   Carr-Madan weights eta/3 * (3 + (-1)^{j+1} - [j == 0])
enum class QuadRule { rectangle, trapezoid, simpson };

QuadRule parse_quad_rule(std::string_view name);
std::string_view to_string(QuadRule rule);

struct QuadConfig {
    std::size_t n_points = std::size_t{1} << 16;
    double eta = 0.25;
    double a = 1.75;
    double epsilon = 0.01;
    QuadRule rule = QuadRule::trapezoid;

    double upper_limit() const noexcept { return static_cast<double>(n_points) * eta; }
    // Throws InvalidInput unless N is a power of two >= 2, eta > 0,
    // epsilon > 0 and a in (3/2, 2].
    void validate() const;
};

struct TruncationBound {
    double w_min = 0.0;   // smallest certified upper limit, > 1
    bool satisfied = false;
};

/// Sufficient truncation length: the tail of the I-integral beyond any
/// w > w_min is below epsilon. `satisfied` compares against `upper_limit`.
TruncationBound min_upper_limit(double epsilon, double tau, double strike, double spot, double a,
                                const NigParams& p, const MmmScalars& s, double upper_limit);

TruncationBound min_upper_limit(const QuadConfig& cfg, double tau, double strike, double spot,
                                const NigParams& p, const MmmScalars& s);

// Integrand of I at frequency v, evaluated directly from the closed forms.
cplx integrand_I(double v, double a, double strike, double spot, double tau, const NigParams& p,
                 const MmmScalars& s);

// Integrand of H (damped call transform) at frequency v.
cplx integrand_H(double v, double a, double strike, double spot, double tau, const NigParams& p,
                 const MmmScalars& s);

// Real part of (1/pi) * integral, plus the imaginary part of the same
// truncated half-line sum. The latter is not zero in general; it is kept as
// a diagnostic only.
struct FourierValue {
    double value = 0.0;
    double imag_part = 0.0;
};

struct StrikeValues {
    double strike = 0.0;
    FourierValue I;
    FourierValue H;
    TruncationBound bound;
};

struct BatchResult {
    std::vector<double> strikes;  // strictly increasing, length N
    std::vector<double> I;
    std::vector<double> H;
    double log_strike_origin = 0.0;  // log of strikes[0]
    double log_strike_step = 0.0;    // 2 pi / (N eta)

    // Index of the grid strike closest to `strike` in log space; RangeError
    // when outside the grid.
    std::size_t index_of(double strike) const;
};

// Frequency-grid tables that do not depend on (spot, tau, strike). Build
// once per (params, config) and reuse for any number of queries; const
// member functions are safe to call concurrently.
class FourierEngine {
public:
    FourierEngine(const NigParams& p, const MmmScalars& s, const QuadConfig& cfg);

    const QuadConfig& config() const noexcept { return cfg_; }
    const NigParams& params() const noexcept { return p_; }
    const MmmScalars& scalars() const noexcept { return s_; }

    TruncationBound certify(double spot, double tau, double strike) const;

    // Throws IntervalTooShort when the certificate fails.
    FourierValue compute_I(double spot, double tau, double strike) const;
    FourierValue compute_H(double spot, double tau, double strike) const;

    // I and H for every strike in one pass over the grid.
    std::vector<StrikeValues> evaluate(double spot, double tau, std::span<const double> strikes) const;

    // Carr-Madan FFT over N log-strikes centred on `center_strike`.
    BatchResult batch_fft(double spot, double tau, double center_strike) const;

    // As above, centred between the smallest and largest of `strikes`, which
    // must all fall in the middle quarter of the grid (RangeError otherwise)
    // and satisfy the truncation certificate (IntervalTooShort otherwise).
    BatchResult batch_fft(double spot, double tau, std::span<const double> strikes) const;

private:
    void require_query(double spot, double tau, double strike) const;

    NigParams p_;
    MmmScalars s_;
    QuadConfig cfg_;
    std::vector<double> weight_;
    std::vector<cplx> w_factor_;   // W(v,a+1) - W(v,a) - W(0,1)
    std::vector<cplx> log_phi_;    // log phi_tau(v - i a) / tau
    std::vector<cplx> inv_denom_;  // 1 / ((iv+a)(iv+a-1))
};

double compute_I(double spot, double tau, double strike, const QuadConfig& cfg, const NigParams& p,
                 const MmmScalars& s);

double compute_H(double spot, double tau, double strike, const QuadConfig& cfg, const NigParams& p,
                 const MmmScalars& s);

BatchResult batch_fft(double spot, double tau, const QuadConfig& cfg, const NigParams& p,
                      const MmmScalars& s);

}  // namespace nighedge
