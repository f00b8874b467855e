#include "xxz/energy.hpp"

#include "xxz/errors.hpp"

namespace xxz {

double szsz_bond_sum(const SpinBasis& basis, std::span<const double> v, Boundary bc) {
    if (v.size() != basis.size())
        throw ShapeError("szsz_bond_sum: vector length does not match sector dimension");
    const int L = basis.L;
    const int nb = bond_count(L, bc);
    double sum = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double w = v[i] * v[i];
        if (w == 0.0) continue;
        const std::uint64_t s = basis.states[i];
        double d = 0.0;
        for (int b = 0; b < nb; ++b) {
            const int a = b;
            const int c = (b + 1) % L;
            d += (((s >> a) & 1u) == ((s >> c) & 1u)) ? 0.25 : -0.25;
        }
        sum += w * d;
    }
    return sum;
}

double energy_derivative_hf(const GroundState& g) {
    if (!g.converged) throw DegeneracyError("energy_derivative_hf: unconverged ground state");
    if (!g.basis) throw ShapeError("energy_derivative_hf: ground state carries no basis");
    return szsz_bond_sum(*g.basis, g.vector, g.bc) / g.L;
}

double energy_second_derivative(double lambda, double dl, int L, int n_up, Boundary bc,
                                const SolverConfig& cfg, SolveCache* cache) {
    if (dl <= 0.0) throw DomainError("energy_second_derivative: dl must be positive");
    SolveCache local;
    SolveCache& c = cache ? *cache : local;
    const auto gp = c.ground(lambda + dl, L, n_up, bc, cfg);
    const auto gm = c.ground(lambda - dl, L, n_up, bc, cfg);
    return (energy_derivative_hf(*gp) - energy_derivative_hf(*gm)) / (2.0 * dl);
}

}  // namespace xxz
