#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "xxz/basis.hpp"

namespace xxz {

enum class Boundary { periodic, open };

const char* to_string(Boundary bc);
Boundary boundary_from_string(const std::string& s);

// Number of nearest-neighbour bonds of the chain.
inline int bond_count(int L, Boundary bc) {
    return bc == Boundary::periodic ? L : L - 1;
}

// Matrix-free XXZ Hamiltonian restricted to one magnetization sector:
//   H = sum_bonds [ (S+ S- + S- S+)/2 + lambda Sz Sz ]
// i.e. unit transverse coupling with the anisotropy lambda on the Ising part.
// Bonds are recomputed on every matvec; nothing is stored besides the basis.
class HamiltonianOp {
public:
    HamiltonianOp(std::shared_ptr<const SpinBasis> basis, double lambda, Boundary bc);

    const SpinBasis& basis() const { return *basis_; }
    std::shared_ptr<const SpinBasis> basis_ptr() const { return basis_; }
    double lambda() const { return lambda_; }
    Boundary bc() const { return bc_; }
    std::size_t dim() const { return basis_->size(); }

    // out = H v.  Throws ShapeError on dimension mismatch.
    void apply(std::span<const double> v, std::span<double> out) const;
    std::vector<double> apply(std::span<const double> v) const;

    // Diagonal matrix element <s|H|s> for the i-th basis state,
    // i.e. lambda * sum_bonds (±1/4) by spin alignment.
    double diagonal(std::size_t i) const;

private:
    std::shared_ptr<const SpinBasis> basis_;
    double lambda_;
    Boundary bc_;
};

// Dense test-oracle representation.
struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<double> entries;  // row-major, dim x dim

    double& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
};

// Materialize H column by column.  Refuses sectors larger than 4096.
DenseMatrix materialize(const HamiltonianOp& H);

inline constexpr std::size_t kMaxDenseDim = 4096;

}  // namespace xxz
