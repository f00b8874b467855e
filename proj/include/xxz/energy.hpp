#pragma once

#include "xxz/lanczos.hpp"

namespace xxz {

struct EnergyRecord {
    double lambda = 0.0;
    double e0 = 0.0;   // energy per site
    double de = 0.0;   // dE/dlambda per site (Hellmann-Feynman)
    double d2e = 0.0;  // d2E/dlambda2 per site (finite difference)
};

// Per-site <sum_bonds Sz_j Sz_j+1> of the ground state.  Only the Ising part
// carries lambda, so by Hellmann-Feynman this is dE/dlambda per site.
double energy_derivative_hf(const GroundState& g);

// Raw bond sum <sum_bonds Sz Sz> without the 1/L normalization.
double szsz_bond_sum(const SpinBasis& basis, std::span<const double> v, Boundary bc);

// Central difference of the Hellmann-Feynman derivative at lambda +/- dl.
double energy_second_derivative(double lambda, double dl, int L, int n_up, Boundary bc,
                                const SolverConfig& cfg = {}, SolveCache* cache = nullptr);

}  // namespace xxz
