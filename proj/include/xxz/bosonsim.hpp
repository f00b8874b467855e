#pragma once

#include <vector>

namespace xxz {

// One (k, -k) pair of the squeezed-vacuum ground state, truncated at Fock
// occupation n_max: amplitudes c_n = (-tanh theta)^n / cosh theta on |n, n>.
struct SqueezedPairState {
    double theta = 0.0;
    int n_max = 0;
    std::vector<double> amplitudes;

    double norm_squared() const;
};

SqueezedPairState build_pair_state(double theta, int n_max = 200);

// Truncated Fock-space overlap sum_n c_n(a) c_n(b); converges to
// 1/cosh(theta_a - theta_b) as n_max grows.
double pair_overlap(const SqueezedPairState& a, const SqueezedPairState& b);

// Closed-form unnormalized per-mode overlap
// (1 - sinh(a) sinh(b) / (cosh(a) cosh(b)))^{-1}.
double z_unnormalized(double theta_a, double theta_b);

// Product over `pairs` independent mode pairs, each evaluated by the
// truncated Fock sum.
double multi_pair_overlap(double theta_a, double theta_b, int pairs, int n_max = 200);

}  // namespace xxz
