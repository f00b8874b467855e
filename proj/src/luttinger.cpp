#include "xxz/luttinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "xxz/errors.hpp"

namespace xxz {

using std::numbers::pi;

LuttingerParams params_of_lambda(double lambda) {
    if (!(lambda > -1.0 && lambda <= 1.0))
        throw DomainError("params_of_lambda: lambda=" + std::to_string(lambda) +
                          " outside the Luttinger-liquid phase (-1, 1]");
    const double acl = std::acos(lambda);
    const double K = (pi / 2.0) / (pi - acl);
    // u -> 0/0 at lambda=1; the limit is pi/2
    const double u = (lambda == 1.0) ? pi / 2.0 : pi * std::sqrt(1.0 - lambda * lambda) / (2.0 * acl);
    return {lambda, K, u, -0.5 * std::log(K)};
}

double fidelity_per_mode(double K, double Kprime) {
    if (K <= 0.0 || Kprime <= 0.0)
        throw DomainError("fidelity_per_mode: Luttinger parameters must be positive");
    // evaluate on the ordered pair so the result is exactly symmetric
    const double r = std::sqrt(std::max(K, Kprime) / std::min(K, Kprime));
    return 2.0 / (r + 1.0 / r);
}

double fidelity_finite(double K, double Kprime, int modes) {
    if (modes < 0) throw DomainError("fidelity_finite: mode count must be >= 0");
    return std::pow(fidelity_per_mode(K, Kprime), modes);
}

double chi_analytic_general(const std::function<double(double)>& K_of, double lambda, double h) {
    if (h <= 0.0) throw DomainError("chi_analytic_general: step h must be positive");
    const double kp = K_of(lambda + h);
    const double km = K_of(lambda - h);
    if (!(kp > 0.0) || !(km > 0.0) || !std::isfinite(kp) || !std::isfinite(km))
        throw DomainError("chi_analytic_general: K_of must be finite and positive near lambda");
    const double dlnK = (std::log(kp) - std::log(km)) / (2.0 * h);
    return 0.25 * dlnK * dlnK;
}

double chi_analytic_xxz(double lambda) {
    if (!(lambda > -1.0 && lambda < 1.0))
        throw DivergenceError("chi_analytic_xxz: diverges at |lambda| >= 1 (lambda=" +
                              std::to_string(lambda) + ")");
    const double w = pi - std::acos(lambda);
    return 1.0 / (4.0 * w * w * (1.0 - lambda * lambda));
}

}  // namespace xxz
