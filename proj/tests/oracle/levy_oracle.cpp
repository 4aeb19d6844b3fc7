#include "oracle/levy_oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace oracle {

namespace {

using boost::math::quadrature::gauss_kronrod;

double k1(double z) { return std::cyl_bessel_k(1.0, z); }

// Globally adaptive Gauss-Kronrod (QAG style): repeatedly bisect the
// subinterval with the largest error estimate until the summed estimate
// meets max(abs_tol, rel |I|). Local error tests chase roundoff on pieces
// whose integrand cancels; a global budget does not.
template <class F>
auto qag(F&& f, const std::vector<double>& breaks, double rel, double abs_tol = 0.0,
         std::size_t max_pieces = 4000) {
    using R = decltype(f(0.5 * (breaks[0] + breaks[1])));
    struct Piece {
        double lo, hi, err;
        R est;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    const auto eval = [&](double lo, double hi) {
        double err = 0.0;
        const R est = gauss_kronrod<double, 61>::integrate(f, lo, hi, 0, 0.0, &err);
        return Piece{lo, hi, err, est};
    };
    std::priority_queue<Piece> heap;
    R total{};
    double total_err = 0.0;
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        const Piece pc = eval(breaks[i - 1], breaks[i]);
        total += pc.est;
        total_err += pc.err;
        heap.push(pc);
    }
    while (total_err > std::max(abs_tol, rel * std::abs(total)) && heap.size() < max_pieces) {
        const Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Piece left = eval(worst.lo, mid);
        const Piece right = eval(mid, worst.hi);
        total += left.est + right.est - worst.est;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed the drift of the running updates
    R sum{};
    while (!heap.empty()) {
        sum += heap.top().est;
        heap.pop();
    }
    return sum;
}

template <class F>
double gk(F&& f, double lo, double hi, double rel) {
    return qag(f, std::vector<double>{lo, hi}, rel);
}

// Breakpoints: decades from eps0 up to 1, then uniform pieces out to x_max,
// no piece longer than a few oscillation periods.
std::vector<double> breakpoints(double eps0, double x_max, double scale) {
    std::vector<double> pts{eps0};
    for (double d = 1e-5; d < 1.0; d *= 10.0)
        if (d > eps0 && d < x_max) pts.push_back(d);
    const double piece = std::min(1.0, 8.0 * std::numbers::pi / std::max(scale, 1.0));
    double x = std::max(pts.back(), std::min(1.0, x_max));
    if (x > pts.back()) pts.push_back(x);
    while (x < x_max) {
        x = std::min(x_max, x + piece);
        pts.push_back(x);
    }
    // refine the decade pieces for high frequencies too
    std::vector<double> out{pts.front()};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double len = pts[i] - pts[i - 1];
        const int m = std::max(1, static_cast<int>(std::ceil(len / piece)));
        for (int j = 1; j <= m; ++j) out.push_back(pts[i - 1] + len * j / m);
    }
    return out;
}

cplx integrate_once(const LevyIntegrand& g, const nighedge::NigParams& p, double eps0, double tol,
                    std::size_t max_pieces) {
    const double c = p.delta * p.alpha / std::numbers::pi;
    const double rate = std::min(p.alpha - p.beta - g.growth, p.alpha + p.beta);
    if (!(rate > 0.0)) throw ToleranceNotMet("integrand not integrable against nu");
    const double x_max = eps0 + 50.0 / rate;

    // small-jump core: (f''(0) + 2 beta f'(0)) c \int_0^eps0 x K1(alpha x) dx
    const double core_k = gk(
        [&](double x) { return p.alpha * x < 1e-150 ? 1.0 / p.alpha : x * k1(p.alpha * x); }, 0.0, eps0, 1e-13);
    cplx total = (g.d2 + 2.0 * p.beta * g.d1) * c * core_k;

    const std::function<cplx(double)> sym = [&](double x) {
        const double base = c * k1(p.alpha * x) / x;
        return g.f(x) * (base * std::exp(p.beta * x)) + g.f(-x) * (base * std::exp(-p.beta * x));
    };
    total += qag(sym, breakpoints(eps0, x_max, g.scale), tol, 0.0, max_pieces);
    return total;
}

}  // namespace

cplx integrate_levy(const LevyIntegrand& g, const nighedge::NigParams& p, OracleOptions opt) {
    const double eps0 = 1e-4 / std::max(1.0, g.scale / 10.0);
    const cplx coarse = integrate_once(g, p, eps0, opt.tol, opt.max_pieces);
    const cplx fine = integrate_once(g, p, eps0 / 4.0, opt.tol * 1e-2, opt.max_pieces);
    if (!(std::abs(fine - coarse) <= opt.abs_target * std::max(1.0, std::abs(fine))))
        throw ToleranceNotMet("oracle refinements disagree by " + std::to_string(std::abs(fine - coarse)));
    return fine;
}

double levy_density_ref(double x, const nighedge::NigParams& p) {
    const double ax = std::abs(x);
    return p.delta * p.alpha / std::numbers::pi * std::exp(p.beta * x) * k1(p.alpha * ax) / ax;
}

double sommerfeld_k1_scaled(double z) {
    if (!(z > 0.0)) throw std::domain_error("sommerfeld_k1: z must be > 0");
    const double t_max = std::acosh(1.0 + 80.0 / z);
    const auto f = [z](double t) { return std::exp(-z * (std::cosh(t) - 1.0)) * std::cosh(t); };
    // the mass sits near t ~ log(2/z) for small z; split there
    const double knee = std::clamp(std::log(2.0 / z), 0.0, t_max);
    double total = 0.0;
    if (knee > 0.0) total += gk(f, 0.0, knee, 1e-13);
    total += gk(f, knee, t_max, 1e-13);
    return total;
}

double sommerfeld_k1(double z) { return std::exp(-z) * sommerfeld_k1_scaled(z); }

double k1_exp_integral(double z) {
    if (!(z > 0.0)) throw std::domain_error("k1_exp_integral: z must be > 0");
    // s = e^t: integrand exp(-s - z^2/(4s)) / s, peaked near s = z/2
    const auto f = [z](double t) {
        const double s = std::exp(t);
        return std::exp(-s - z * z / (4.0 * s)) / s;
    };
    // s + z^2/(4s) exceeds its minimum z by 60 outside [lo, hi]
    const double lo = std::log(z * z / (4.0 * (z + 60.0)));
    const double hi = std::log(2.0 * z + 60.0);
    std::vector<double> breaks;
    for (double t = lo; t < hi; t += 1.0) breaks.push_back(t);
    breaks.push_back(hi);
    return 0.25 * z * qag(f, breaks, 1e-14);
}

double tail_mass_ref(const nighedge::NigParams& p, double cut, double tol) {
    const double rate = p.alpha - std::abs(p.beta);
    const double x_max = cut + 60.0 / rate;
    std::vector<double> breaks;
    for (double x = cut; x < x_max; x *= 2.0) breaks.push_back(x);
    breaks.push_back(x_max);
    return qag([&](double x) { return levy_density_ref(x, p) + levy_density_ref(-x, p); }, breaks, tol);
}

cplx w_ref(double v, double a, const nighedge::NigParams& p, OracleOptions opt) {
    const cplx u(a, v);
    LevyIntegrand g;
    g.f = [u](double x) { return std::exp(u * x) - 1.0; };
    g.d1 = u;
    g.d2 = u * u;
    g.growth = a;
    g.scale = std::max(1.0, std::abs(u));
    return integrate_levy(g, p, opt);
}

double levy_mean_ref(const nighedge::NigParams& p, OracleOptions opt) {
    LevyIntegrand g;
    g.f = [](double x) { return cplx(x, 0.0); };
    g.d1 = 1.0;
    g.d2 = 0.0;
    g.growth = 0.0;
    return integrate_levy(g, p, opt).real();
}

double mu_s_ref(const nighedge::NigParams& p, OracleOptions opt) {
    LevyIntegrand g;
    g.f = [](double x) { return cplx(std::expm1(x), 0.0); };
    g.d1 = 1.0;
    g.d2 = 1.0;
    g.growth = 1.0;
    return integrate_levy(g, p, opt).real();
}

double c_nu_ref(const nighedge::NigParams& p, OracleOptions opt) {
    LevyIntegrand g;
    g.f = [](double x) {
        const double e = std::expm1(x);
        return cplx(e * e, 0.0);
    };
    g.d1 = 0.0;
    g.d2 = 2.0;
    g.growth = 2.0;
    return integrate_levy(g, p, opt).real();
}

double mu_star_ref(const nighedge::NigParams& p, double h, OracleOptions opt) {
    LevyIntegrand g;
    g.f = [h](double x) {
        const double e = std::expm1(x);
        return cplx((x - e) * (1.0 - h * e), 0.0);
    };
    g.d1 = 0.0;
    g.d2 = -1.0;
    g.growth = 2.0;
    return integrate_levy(g, p, opt).real();
}

}  // namespace oracle
