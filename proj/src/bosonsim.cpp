#include "xxz/bosonsim.hpp"

#include <cmath>

#include "xxz/errors.hpp"

namespace xxz {

double SqueezedPairState::norm_squared() const {
    double s = 0.0;
    for (double c : amplitudes) s += c * c;
    return s;
}

SqueezedPairState build_pair_state(double theta, int n_max) {
    if (n_max < 0) throw DomainError("build_pair_state: n_max must be >= 0");
    const double t = std::tanh(theta);
    if (!(std::abs(t) < 1.0)) throw DomainError("build_pair_state: |tanh theta| must be < 1");

    SqueezedPairState st;
    st.theta = theta;
    st.n_max = n_max;
    st.amplitudes.resize(n_max + 1);
    const double c0 = 1.0 / std::cosh(theta);
    double c = c0;
    for (int n = 0; n <= n_max; ++n) {
        st.amplitudes[n] = c;
        c *= -t;
    }
    return st;
}

double pair_overlap(const SqueezedPairState& a, const SqueezedPairState& b) {
    const int n = std::min(a.n_max, b.n_max);
    double s = 0.0;
    for (int i = 0; i <= n; ++i) s += a.amplitudes[i] * b.amplitudes[i];
    return s;
}

double z_unnormalized(double theta_a, double theta_b) {
    const double q = std::tanh(theta_a) * std::tanh(theta_b);
    if (!(q < 1.0)) throw DomainError("z_unnormalized: tanh product must stay below 1");
    return 1.0 / (1.0 - q);
}

double multi_pair_overlap(double theta_a, double theta_b, int pairs, int n_max) {
    if (pairs < 0) throw DomainError("multi_pair_overlap: pair count must be >= 0");
    const SqueezedPairState a = build_pair_state(theta_a, n_max);
    const SqueezedPairState b = build_pair_state(theta_b, n_max);
    double f = 1.0;
    const double per = pair_overlap(a, b);
    for (int i = 0; i < pairs; ++i) f *= per;
    return f;
}

}  // namespace xxz
