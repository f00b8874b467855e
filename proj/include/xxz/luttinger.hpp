#pragma once

#include <functional>

namespace xxz {

// Bethe-ansatz Luttinger parameters of the XXZ chain at anisotropy lambda,
// valid on -1 < lambda <= 1:
//   K = (pi/2) / (pi - arccos lambda),  u = pi sqrt(1-lambda^2) / (2 arccos lambda)
// theta is the Bogoliubov angle of the quasi-free boson picture, -ln(K)/2.
struct LuttingerParams {
    double lambda;
    double K;
    double u;
    double theta;
};

LuttingerParams params_of_lambda(double lambda);

// Per-mode ground-state overlap 1/cosh(theta' - theta) = 2/(sqrt(K/K') + sqrt(K'/K)).
// Depends on the ratio K/K' only; u never enters any fidelity quantity.
double fidelity_per_mode(double K, double Kprime);

// M-mode fidelity [cosh(theta'-theta)]^(-M).  The mode product is formally
// infinite; M is an explicit cutoff convention (default L elsewhere).
double fidelity_finite(double K, double Kprime, int modes);

// Susceptibility density 1/4 (d lnK / dlambda)^2 with a centered numeric
// derivative of lnK at step h.
double chi_analytic_general(const std::function<double(double)>& K_of, double lambda, double h);

// XXZ closed form 1 / (4 [pi - arccos lambda]^2 (1 - lambda^2)).
// Diverges toward both lambda = -1 and lambda = +1.
double chi_analytic_xxz(double lambda);

}  // namespace xxz
