#include "nighedge/error.hpp"
#include "nighedge/mmm.hpp"
#include "oracle/levy_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nighedge;

namespace {

const NigParams paper = NigParams::spx_2016();

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// log phi / tau rebuilt from the principal-branch exponent of each component.
cplx exponent_ref(cplx u, const NigParams& p, const MmmScalars& s) {
    const auto psi = [u](double alpha, double beta, double delta) {
        const cplx bu = beta + u;
        return delta * (std::sqrt(alpha * alpha - beta * beta) - std::sqrt(alpha * alpha - bu * bu));
    };
    const auto mean = [](double alpha, double beta, double delta) {
        return delta * beta / std::sqrt(alpha * alpha - beta * beta);
    };
    const double d0 = (1.0 + s.h) * p.delta;
    const double d1 = -s.h * p.delta;
    const double drift = s.mu_star - mean(p.alpha, p.beta, d0) - mean(p.alpha, 1.0 + p.beta, d1);
    return u * drift + psi(p.alpha, p.beta, d0) + psi(p.alpha, 1.0 + p.beta, d1);
}

}  // namespace

TEST_SUITE("mmm_measure") {

TEST_CASE("scalars against the oracle") {
    const MmmScalars s = mmm_scalars(paper);
    const double mu_s = oracle::mu_s_ref(paper);
    const double c_nu = oracle::c_nu_ref(paper);
    CHECK(rel(s.mu_s, mu_s) < 1e-6);
    CHECK(rel(s.c_nu, c_nu) < 1e-6);
    CHECK(rel(s.h, mu_s / c_nu) < 1e-6);
    CHECK(s.h > -1.0);
    CHECK(s.h < 0.0);
    CHECK(rel(s.mu_star, oracle::mu_star_ref(paper, s.h)) < 1e-6);
}

TEST_CASE("h = 0 drops the shifted component") {
    const NigParams p{10.0, -0.5, 0.4};
    const MmmScalars s = mmm_scalars(p);
    CHECK(s.h == 0.0);
    const MmmComponents c = mmm_components(p, s);
    CHECK_FALSE(c.shifted.has_value());
    CHECK(c.original.delta == p.delta);
    for (double x : {-1.0, -0.01, 0.01, 1.0}) CHECK(levy_density_star(x, p, s) == levy_density(x, p));
}

TEST_CASE("mmm_scalars preconditions") {
    CHECK_THROWS_AS(mmm_scalars({2.0, -1.0, 0.4}), PreconditionError);
    // math mode admits it, but e^{2x} is not integrable against nu when alpha <= |2 + beta|
    CHECK_THROWS_AS(mmm_scalars({1.5, 1.0, 0.4}, ValidationMode::math), PreconditionError);
    // mu_S > 0 for beta > -1/2: the gate holds in math mode, Condition 2 does not
    CHECK_THROWS_AS(mmm_scalars({10.0, 0.0, 0.4}, ValidationMode::math), PreconditionError);
}

TEST_CASE("theta stays below one") {
    const MmmScalars s = mmm_scalars(paper);
    for (double x = -10.0; x <= 10.0; x += 0.01) CHECK(theta(x, s) < 1.0);
}

TEST_CASE("nu* decomposition equals the Girsanov reweighting") {
    const MmmScalars s = mmm_scalars(paper);
    for (double x : {-2.0, -0.3, -1e-3, 1e-5, 1e-3, 0.3, 2.0}) {
        const double want = (1.0 - theta(x, s)) * levy_density(x, paper);
        CHECK(rel(levy_density_star(x, paper, s), want) < 1e-12);
    }
}

TEST_CASE("martingale identity") {
    const MmmScalars s = mmm_scalars(paper);
    for (double tau : {1.0 / 249.0, 0.5, 1.0}) {
        const cplx phi = char_fn({{0.0, 1.0}, tau}, paper, s);
        CHECK(std::abs(phi - 1.0) < 1e-10);
    }
}

TEST_CASE("char_fn against the oracle on nu*") {
    const MmmScalars s = mmm_scalars(paper);
    const double v = 10.0;
    const double a = 1.75;
    const double tau = 0.5;
    const cplx u(a, v);
    const double h = s.h;
    oracle::LevyIntegrand g;
    g.f = [u, h](double x) {
        return (std::exp(u * x) - 1.0 - u * x) * (1.0 - h * std::expm1(x));
    };
    g.d1 = 0.0;
    g.d2 = u * u;
    g.growth = a + 1.0;
    g.scale = std::abs(u);
    const cplx ref = std::exp(tau * (oracle::integrate_levy(g, paper) + u * s.mu_star));
    const cplx got = char_fn({{v, a}, tau}, paper, s);
    CHECK(std::abs(got - ref) < 1e-6 * std::abs(ref));
}

TEST_CASE("char_fn matches the principal-branch form and its conjugate symmetry (property)") {
    const MmmScalars s = mmm_scalars(paper);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> a_d(1.5001, 2.0);
    std::uniform_real_distribution<double> v_d(0.0, 400.0);
    std::uniform_real_distribution<double> tau_d(1e-3, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = a_d(gen);
        const double v = v_d(gen);
        const double tau = tau_d(gen);
        const cplx got = char_fn({{v, a}, tau}, paper, s);
        const cplx ref = std::exp(tau * exponent_ref({a, v}, paper, s));
        CHECK(std::abs(got - ref) <= 1e-11 * (1e-300 + std::abs(ref)) + 1e-300);
        const cplx mirrored = std::exp(tau * exponent_ref({a, -v}, paper, s));
        CHECK(std::abs(std::conj(mirrored) - ref) <= 1e-11 * std::abs(ref) + 1e-300);
    }
}

TEST_CASE("envelope bounds |phi|") {
    const MmmScalars s = mmm_scalars(paper);
    for (double tau : {1.0 / 249.0, 0.1, 1.0})
        for (double a : {1.6, 1.75, 2.0})
            for (double v = 0.0; v <= 20000.0; v = v < 1.0 ? v + 0.25 : v * 1.3) {
                const double lhs = std::log(std::abs(char_fn({{v, a}, tau}, paper, s)));
                const double rhs = log_envelope_C(tau, a, paper, s) - tau * paper.delta * v;
                CHECK(lhs <= rhs + 1e-12);
            }
}

TEST_CASE("char_fn domain") {
    const MmmScalars s = mmm_scalars(paper);
    CHECK_THROWS_AS(char_fn({{1.0, 1.75}, 0.0}, paper, s), DomainError);
    CHECK_THROWS_AS(char_fn({{1.0, 1.75}, -1.0}, paper, s), DomainError);
    CHECK_THROWS_AS(envelope_C(1.0, 2.5, paper, s), DomainError);
}

}  // TEST_SUITE
