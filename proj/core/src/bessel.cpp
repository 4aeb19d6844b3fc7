#include "nighedge/error.hpp"
#include "nighedge/nig.hpp"

#include <cmath>
#include <numbers>

namespace nighedge {

namespace {

constexpr int kMaxIter = 10000;
constexpr double kEps = 1e-17;

// K1(z) = 1/z + ln(z/2) I1(z) - (z/4) sum_k [psi(k+1) + psi(k+2)] (z^2/4)^k / (k! (k+1)!)
double k1_series(double z) {
    const double q = 0.25 * z * z;
    double term = 1.0;  // (z^2/4)^k / (k! (k+1)!)
    double psi1 = -std::numbers::egamma;        // psi(k+1)
    double psi2 = 1.0 - std::numbers::egamma;   // psi(k+2)
    double i1_sum = 0.0;
    double psi_sum = 0.0;
    for (int k = 0; k < kMaxIter; ++k) {
        i1_sum += term;
        const double contrib = (psi1 + psi2) * term;
        psi_sum += contrib;
        if (term < kEps * i1_sum && std::abs(contrib) < kEps * std::abs(psi_sum)) break;
        const double kp1 = k + 1.0;
        term *= q / (kp1 * (kp1 + 1.0));
        psi1 += 1.0 / kp1;
        psi2 += 1.0 / (kp1 + 1.0);
    }
    const double i1 = 0.5 * z * i1_sum;
    return 1.0 / z + std::log(0.5 * z) * i1 - 0.25 * z * psi_sum;
}

// Steed's continued fraction (Temme's CF2) for K_0 and K_1, valid for z >= 2.
double k1_continued_fraction(double z) {
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= kMaxIter; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < 1e-16) break;
    }
    h *= a1;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z) / s;
    return k0 * (z + 0.5 - h) / z;
}

}  // namespace

double bessel_k1(double z) {
    if (!(z > 0.0)) throw DomainError("bessel_k1: argument must be > 0");
    if (std::isinf(z)) return 0.0;
    return z <= 2.0 ? k1_series(z) : k1_continued_fraction(z);
}

}  // namespace nighedge
