#include "nighedge/error.hpp"
#include "nighedge/simulate.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace nighedge;

TEST_SUITE("nig_simulate") {

TEST_CASE("sample_ig moments") {
    for (auto [mean, shape] : {std::pair{1.0, 2.0}, std::pair{0.004, 1.6e-5}, std::pair{3.0, 50.0}}) {
        Rng rng(17);
        const int n = 1000000;
        double sum = 0.0;
        double sum2 = 0.0;
        bool positive = true;
        for (int i = 0; i < n; ++i) {
            const double x = sample_ig(mean, shape, rng);
            positive = positive && x > 0.0;
            sum += x;
            sum2 += x * x;
        }
        CHECK(positive);
        const double m = sum / n;
        const double var = mean * mean * mean / shape;
        CHECK(std::abs(m - mean) < 3.0 * std::sqrt(var / n));
        CHECK(sum2 / n - m * m == doctest::Approx(var).epsilon(0.05));
    }
}

TEST_CASE("sample_ig domain") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_ig(0.0, 1.0, rng), DomainError);
    CHECK_THROWS_AS(sample_ig(1.0, -1.0, rng), DomainError);
}

TEST_CASE("seeded streams are reproducible") {
    Rng a(99), b(99), c(100);
    bool same = true, differs = false;
    for (int i = 0; i < 100; ++i) {
        const double x = sample_ig(1.0, 1.0, a);
        same = same && x == sample_ig(1.0, 1.0, b);
        differs = differs || x != sample_ig(1.0, 1.0, c);
    }
    CHECK(same);
    CHECK(differs);

    const PricePath p1 = simulate_path({});
    const PricePath p2 = simulate_path({});
    CHECK(p1.prices == p2.prices);
    CHECK(p1.size() == 250);
    CHECK(p1.times.back() == 1.0);
    for (double s : p1.prices) CHECK(s > 0.0);
}

TEST_CASE("NIG increment mean and variance") {
    const NigParams p = NigParams::spx_2016();
    const double gamma = std::sqrt(p.alpha * p.alpha - p.beta * p.beta);
    const double dt = 1.0 / 249.0;
    Rng rng(5);
    const int n = 400000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_nig_increment(p, dt, rng);
        sum += x;
        sum2 += x * x;
    }
    const double mean = p.delta * p.beta / gamma * dt;
    const double var = p.delta * p.alpha * p.alpha / (gamma * gamma * gamma) * dt;
    CHECK(std::abs(sum / n - mean) < 4.0 * std::sqrt(var / n));
    CHECK(sum2 / n - (sum / n) * (sum / n) == doctest::Approx(var).epsilon(0.03));
}

TEST_CASE("empirical characteristic function of L_1") {
    const NigParams p = NigParams::spx_2016();
    const double gamma = std::sqrt(p.alpha * p.alpha - p.beta * p.beta);
    Rng rng(123);
    const int n = 20000;
    std::vector<double> l(n, 0.0);
    const double dt = 1.0 / 249.0;
    for (double& x : l)
        for (int k = 0; k < 249; ++k) x += sample_nig_increment(p, dt, rng);
    for (double z : {-2.0, -1.0, 1.0, 2.0}) {
        std::complex<double> emp = 0.0;
        for (double x : l) emp += std::exp(std::complex<double>(0.0, z * x));
        emp /= static_cast<double>(n);
        const std::complex<double> bz(p.beta, z);
        const auto cf = std::exp(p.delta * (gamma - std::sqrt(p.alpha * p.alpha - bz * bz)));
        CHECK(std::abs(emp - cf) < 0.02);
    }
}

TEST_CASE("SimConfig validation") {
    SimConfig c;
    c.n_steps = 0;
    CHECK_THROWS_AS(simulate_path(c), InvalidInput);
    c = SimConfig{};
    c.params = {1.0, 2.0, 0.4};
    CHECK_THROWS_AS(simulate_path(c), InvalidInput);
}

}  // TEST_SUITE
