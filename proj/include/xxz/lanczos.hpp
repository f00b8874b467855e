#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "xxz/hamiltonian.hpp"

namespace xxz {

struct SolverConfig {
    double tol = 1e-12;        // residual tolerance on the lowest Ritz pair
    int max_iter = 500;        // Krylov dimension cap
    std::uint64_t seed = 12345;
    // When true, a gap below the degeneracy threshold raises DegeneracyError.
    // Sector-minimum comparisons set this to false and check downstream.
    bool require_unique = true;
};

struct GroundState {
    double lambda = 0.0;
    int L = 0;
    int n_up = 0;
    Boundary bc = Boundary::periodic;
    double energy = 0.0;
    std::vector<double> vector;  // unit norm, gauge-fixed
    double gap = std::numeric_limits<double>::infinity();  // E1 - E0 estimate
    bool converged = false;
    std::shared_ptr<const SpinBasis> basis;
};

// gap threshold below which two states count as degenerate
inline double degeneracy_threshold(double energy) {
    return 1e-8 * std::max(1.0, std::abs(energy));
}

inline bool is_degenerate(const GroundState& g) {
    return g.gap < degeneracy_threshold(g.energy);
}

// Normalize and fix the overall sign so the largest-magnitude amplitude is
// positive (ties broken by lowest index).  Throws DomainError on a zero vector.
std::vector<double> gauge_fix(std::vector<double> v);

// Lanczos with full reorthogonalization on an abstract matvec.
// Returns (E0, gauge-fixed ground vector, gap estimate, converged).
// Throws ConvergenceError after max_iter without residual < tol.
struct LanczosResult {
    double energy = 0.0;
    std::vector<double> vector;
    double gap = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;
};

// Lanczos failed to converge; carries the best iterate found.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, LanczosResult best_iterate)
        : std::runtime_error(what), best(std::move(best_iterate)) {}
    LanczosResult best;
};

using MatVec = std::function<void(std::span<const double>, std::span<double>)>;

LanczosResult lanczos_raw(const MatVec& matvec, std::size_t dim, const SolverConfig& cfg);

// Sector ground state of the XXZ chain.  Throws DegeneracyError when the gap
// estimate falls below the degeneracy threshold and cfg.require_unique is set.
GroundState lanczos_ground(const HamiltonianOp& H, const SolverConfig& cfg = {});

// Memoizes ground states by (lambda, L, n_up, bc, seed) so the solve at a
// grid point is shared between the fidelity estimators and the energy
// derivatives.  Insert-or-get is mutex-guarded for concurrent sweeps.
class SolveCache {
public:
    std::shared_ptr<const GroundState> ground(double lambda, int L, int n_up, Boundary bc,
                                              const SolverConfig& cfg);

private:
    using Key = std::tuple<double, int, int, int, std::uint64_t>;
    std::map<Key, std::shared_ptr<const GroundState>> cache_;
    std::mutex mutex_;
};

}  // namespace xxz
