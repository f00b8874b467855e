#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xxz/bosonsim.hpp"
#include "xxz/errors.hpp"
#include "xxz/luttinger.hpp"

using namespace xxz;

TEST_CASE("vacuum at theta = 0") {
    const auto st = build_pair_state(0.0, 10);
    CHECK(st.amplitudes[0] == 1.0);
    for (int n = 1; n <= 10; ++n) CHECK(st.amplitudes[n] == 0.0);
}

TEST_CASE("amplitude formula at small cutoff") {
    const auto st = build_pair_state(0.5, 1);
    CHECK(st.amplitudes[0] == doctest::Approx(1 / std::cosh(0.5)).epsilon(1e-15));
    CHECK(st.amplitudes[1] == doctest::Approx(-std::tanh(0.5) / std::cosh(0.5)).epsilon(1e-15));
}

TEST_CASE("signs alternate for theta > 0") {
    const auto st = build_pair_state(0.8, 12);
    for (int n = 0; n <= 12; ++n) CHECK((n % 2 == 0 ? st.amplitudes[n] > 0 : st.amplitudes[n] < 0));
}

TEST_CASE("norm converges geometrically") {
    const double theta = 1.1;
    double prev = 0.0;
    for (int n_max : {2, 8, 32, 128}) {
        const auto st = build_pair_state(theta, n_max);
        const double nrm = st.norm_squared();
        CHECK(nrm > prev);            // monotone in the cutoff
        CHECK(nrm <= 1.0 + 1e-15);
        const double tail = std::pow(std::tanh(theta), 2 * (n_max + 1));
        CHECK(1.0 - nrm <= std::max(tail * 1.0001, 8e-16));  // roundoff floor
        prev = nrm;
    }
}

TEST_CASE("overlap reproduces the closed form") {
    // K: 1 -> 1/2 is theta: 0 -> (ln 2)/2
    const auto a = build_pair_state(0.0, 200);
    const auto b = build_pair_state(0.5 * std::log(2.0), 200);
    const double f = pair_overlap(a, b);
    CHECK(std::abs(f - 2 * std::sqrt(2) / 3) < 1e-10);
    CHECK(std::abs(f - fidelity_per_mode(1.0, 0.5)) < 1e-10);
}

TEST_CASE("closed-form convergence bound across a theta grid") {
    for (double ta = -1.5; ta <= 1.5; ta += 0.5) {
        for (double tb = -1.5; tb <= 1.5; tb += 0.5) {
            const int n_max = 40;
            const auto a = build_pair_state(ta, n_max);
            const auto b = build_pair_state(tb, n_max);
            const double err = std::abs(pair_overlap(a, b) - 1 / std::cosh(ta - tb));
            const double t = std::max(std::tanh(std::abs(ta)), std::tanh(std::abs(tb)));
            CHECK(err <= 2 * std::pow(t, 2 * n_max) + 1e-15);
        }
    }
}

TEST_CASE("unnormalized per-mode factor") {
    CHECK(z_unnormalized(0.0, 0.0) == 1.0);
    const double theta = 0.9;
    CHECK(z_unnormalized(theta, theta) ==
          doctest::Approx(std::cosh(theta) * std::cosh(theta)).epsilon(1e-14));
    // geometric series matches the closed form
    double sum = 0.0, term = 1.0;
    const double q = std::tanh(0.7) * std::tanh(-0.3);
    for (int n = 0; n < 500; ++n, term *= q) sum += term;
    CHECK(z_unnormalized(0.7, -0.3) == doctest::Approx(sum).epsilon(1e-14));
    // normalized ratio identity
    for (double ta : {-1.2, 0.1, 0.8}) {
        for (double tb : {-0.5, 0.4, 1.3}) {
            const double ratio = z_unnormalized(ta, tb) /
                                 std::sqrt(z_unnormalized(ta, ta) * z_unnormalized(tb, tb));
            CHECK(std::abs(ratio - 1 / std::cosh(ta - tb)) < 1e-12);
        }
    }
}

TEST_CASE("only the angle difference matters") {
    const double shift = 0.4;
    const auto a = build_pair_state(0.3, 300);
    const auto b = build_pair_state(-0.2, 300);
    const auto as = build_pair_state(0.3 + shift, 300);
    const auto bs = build_pair_state(-0.2 + shift, 300);
    CHECK(std::abs(pair_overlap(a, b) - pair_overlap(as, bs)) < 1e-10);
}

TEST_CASE("multiplicativity over independent pairs") {
    const double ta = 0.0, tb = 0.5 * std::log(2.0);
    const int M = 12;
    const double f = multi_pair_overlap(ta, tb, M);
    CHECK(std::abs(f - fidelity_finite(1.0, 0.5, M)) < 1e-9);
    CHECK(multi_pair_overlap(ta, tb, 0) == 1.0);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(build_pair_state(0.5, -1), DomainError);
    CHECK_THROWS_AS(multi_pair_overlap(0.1, 0.2, -3), DomainError);
}
