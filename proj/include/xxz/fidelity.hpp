#pragma once

#include <limits>

#include "xxz/lanczos.hpp"

namespace xxz {

struct FidelityResult {
    double lambda = 0.0;
    double delta_lambda = 0.0;
    double F = 1.0;
    double chi_logF = std::numeric_limits<double>::quiet_NaN();   // per site, -2 lnF / (L dl^2)
    double chi_trace = std::numeric_limits<double>::quiet_NaN();  // per site, (1/2L) Tr[(drho)^2]
};

// |<a|b>| for two sector ground states.  Throws ShapeError when the sectors
// differ and DegeneracyError when either state is degenerate or unconverged.
double overlap(const GroundState& a, const GroundState& b);

// Log-fidelity estimator: F between the ground states at lambda -/+ dl/2,
// chi = -2 ln F / (L dl^2).  Centered so the feature location is unbiased.
FidelityResult chi_log_fidelity(double lambda, double dl, int L, int n_up, Boundary bc,
                                const SolverConfig& cfg = {}, SolveCache* cache = nullptr);

// Trace-form estimator: with sign-aligned endpoint vectors at lambda +/- dl,
// d = (psi_+ - psi_-) / (2 dl) and chi = (<d,d> - <psi,d>^2) / L.
FidelityResult chi_trace_form(double lambda, double dl, int L, int n_up, Boundary bc,
                              const SolverConfig& cfg = {}, SolveCache* cache = nullptr);

}  // namespace xxz
