#pragma once

// Test-only brute-force oracle: dense diagonalization of a materialized
// sector Hamiltonian.  Independent of the Lanczos path it is used to check.

#include <Eigen/Dense>
#include <vector>

#include "xxz/hamiltonian.hpp"
#include "xxz/lanczos.hpp"

namespace xxz::test {

struct DenseGround {
    double energy;
    double gap;
    std::vector<double> vector;  // gauge-fixed
};

inline DenseGround dense_ground(const HamiltonianOp& H) {
    const DenseMatrix M = materialize(H);
    const auto n = static_cast<Eigen::Index>(M.dim);
    Eigen::MatrixXd A(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) A(i, j) = M.at(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);

    DenseGround g;
    g.energy = es.eigenvalues()(0);
    g.gap = n >= 2 ? es.eigenvalues()(1) - es.eigenvalues()(0)
                   : std::numeric_limits<double>::infinity();
    std::vector<double> v(M.dim);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = es.eigenvectors()(i, 0);
    g.vector = gauge_fix(std::move(v));
    return g;
}

}  // namespace xxz::test
