#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "xxz/errors.hpp"
#include "xxz/luttinger.hpp"

using namespace xxz;
using std::numbers::pi;

TEST_CASE("Bethe-ansatz parameters at landmark points") {
    const auto p0 = params_of_lambda(0.0);
    CHECK(p0.K == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p0.u == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p0.theta == doctest::Approx(0.0).epsilon(1e-14));

    CHECK(params_of_lambda(1.0).K == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(params_of_lambda(1.0).u == doctest::Approx(pi / 2).epsilon(1e-14));
    CHECK(params_of_lambda(0.5).K == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("domain of the Luttinger phase") {
    CHECK_THROWS_AS(params_of_lambda(-1.0), DomainError);
    CHECK_THROWS_AS(params_of_lambda(-1.5), DomainError);
    CHECK_THROWS_AS(params_of_lambda(1.0001), DomainError);
}

TEST_CASE("Bogoliubov angle consistency") {
    for (double K = 0.05; K <= 20.0; K *= 1.37) {
        const double theta = -0.5 * std::log(K);
        CHECK(std::cosh(theta) == doctest::Approx((1 + K) / (2 * std::sqrt(K))).epsilon(1e-12));
        CHECK(std::sinh(theta) == doctest::Approx((1 - K) / (2 * std::sqrt(K))).epsilon(1e-12));
        CHECK(std::cosh(theta) * std::cosh(theta) - std::sinh(theta) * std::sinh(theta) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("per-mode fidelity") {
    CHECK(fidelity_per_mode(0.7, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fidelity_per_mode(1.0, 0.5) == doctest::Approx(2 * std::sqrt(2) / 3).epsilon(1e-14));
    CHECK(fidelity_per_mode(1.0, 0.5) == fidelity_per_mode(0.5, 1.0));
    // only the ratio matters
    CHECK(fidelity_per_mode(2.0, 1.0) == doctest::Approx(fidelity_per_mode(4.0, 2.0)).epsilon(1e-14));
    // matches 1/cosh(dtheta)
    const double th1 = -0.5 * std::log(1.3), th2 = -0.5 * std::log(0.4);
    CHECK(fidelity_per_mode(1.3, 0.4) == doctest::Approx(1 / std::cosh(th1 - th2)).epsilon(1e-14));
    CHECK_THROWS_AS(fidelity_per_mode(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(fidelity_per_mode(1.0, -2.0), DomainError);
}

TEST_CASE("finite-size fidelity") {
    CHECK(fidelity_finite(1.0, 0.5, 0) == 1.0);
    CHECK(fidelity_finite(1.0, 0.5, 2) == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    // orthogonality catastrophe: monotone decay toward zero
    double prev = 1.0;
    for (int M : {1, 4, 16, 64, 256}) {
        const double f = fidelity_finite(1.0, 0.5, M);
        CHECK(f < prev);
        prev = f;
    }
    CHECK(prev < 1e-2);
    CHECK_THROWS_AS(fidelity_finite(1.0, 0.5, -1), DomainError);
}

TEST_CASE("analytic susceptibility closed form") {
    CHECK(chi_analytic_xxz(0.0) == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-14));
    CHECK(chi_analytic_xxz(0.5) == doctest::Approx(3.0 / (4 * pi * pi)).epsilon(1e-14));
    CHECK(chi_analytic_xxz(0.99) / chi_analytic_xxz(0.9) > 5.0);
    CHECK_THROWS_AS(chi_analytic_xxz(1.0), DivergenceError);
    CHECK_THROWS_AS(chi_analytic_xxz(-1.0), DivergenceError);
}

TEST_CASE("general formula specializations") {
    // constant K has no susceptibility
    CHECK(chi_analytic_general([](double) { return 2.7; }, 0.3, 1e-6) ==
          doctest::Approx(0.0).epsilon(1e-15));
    // K = exp(lambda) gives exactly 1/4
    CHECK(chi_analytic_general([](double l) { return std::exp(l); }, -0.8, 1e-6) ==
          doctest::Approx(0.25).epsilon(1e-9));
    CHECK_THROWS_AS(chi_analytic_general([](double) { return 1.0; }, 0.0, 0.0), DomainError);
}

TEST_CASE("general and XXZ forms coincide across the phase") {
    auto K_of = [](double l) { return params_of_lambda(l).K; };
    for (int i = 0; i <= 100; ++i) {
        const double lambda = -0.95 + 1.9 * i / 100;
        const double general = chi_analytic_general(K_of, lambda, 1e-6);
        const double closed = chi_analytic_xxz(lambda);
        CHECK(std::abs(general - closed) / closed < 1e-6);
    }
}

TEST_CASE("divergence trend toward both endpoints") {
    // interior minimum, blow-up at the edges
    double min_chi = 1e300;
    double min_at = 0;
    for (int i = 1; i < 2000; ++i) {
        const double lambda = -0.999 + 1.998 * i / 2000;
        const double chi = chi_analytic_xxz(lambda);
        if (chi < min_chi) {
            min_chi = chi;
            min_at = lambda;
        }
    }
    CHECK(min_at > -0.99);
    CHECK(min_at < 0.99);
    CHECK(chi_analytic_xxz(-0.999) > 100 * min_chi);
    CHECK(chi_analytic_xxz(0.999) > 100 * min_chi);
}
