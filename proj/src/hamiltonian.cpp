#include "xxz/hamiltonian.hpp"

#include <cassert>
#include <string>

#include "xxz/errors.hpp"

namespace xxz {

const char* to_string(Boundary bc) {
    return bc == Boundary::periodic ? "periodic" : "open";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "periodic") return Boundary::periodic;
    if (s == "open") return Boundary::open;
    throw DomainError("unknown boundary condition '" + s + "' (periodic|open)");
}

HamiltonianOp::HamiltonianOp(std::shared_ptr<const SpinBasis> basis, double lambda, Boundary bc)
    : basis_(std::move(basis)), lambda_(lambda), bc_(bc) {
    if (!basis_) throw ShapeError("HamiltonianOp: null basis");
    if (bc_ == Boundary::periodic && basis_->L < 3)
        throw DomainError("HamiltonianOp: periodic chains need L >= 3 "
                          "(L=2 periodic double-counts the single bond)");
}

double HamiltonianOp::diagonal(std::size_t i) const {
    const std::uint64_t s = basis_->states[i];
    const int L = basis_->L;
    const int nb = bond_count(L, bc_);
    double d = 0.0;
    for (int b = 0; b < nb; ++b) {
        const int a = b;
        const int c = (b + 1) % L;
        const int za = static_cast<int>((s >> a) & 1u);
        const int zc = static_cast<int>((s >> c) & 1u);
        d += (za == zc) ? 0.25 : -0.25;
    }
    return lambda_ * d;
}

void HamiltonianOp::apply(std::span<const double> v, std::span<double> out) const {
    const std::size_t n = basis_->size();
    if (v.size() != n || out.size() != n)
        throw ShapeError("apply: vector length " + std::to_string(v.size()) +
                         " does not match sector dimension " + std::to_string(n));

    const int L = basis_->L;
    const int nb = bond_count(L, bc_);

    for (std::size_t i = 0; i < n; ++i) out[i] = diagonal(i) * v[i];

    for (std::size_t i = 0; i < n; ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        const std::uint64_t s = basis_->states[i];
        for (int b = 0; b < nb; ++b) {
            const int a = b;
            const int c = (b + 1) % L;
            const std::uint64_t ba = (s >> a) & 1u;
            const std::uint64_t bc_bit = (s >> c) & 1u;
            if (ba == bc_bit) continue;
            const std::uint64_t t = s ^ ((std::uint64_t{1} << a) | (std::uint64_t{1} << c));
            // Exchange term (SxSx + SySy) flips an antialigned pair, amplitude 1/2.
            const std::size_t j = basis_->index_of(t);
            out[j] += 0.5 * vi;
        }
    }
}

std::vector<double> HamiltonianOp::apply(std::span<const double> v) const {
    std::vector<double> out(basis_->size());
    apply(v, out);
    return out;
}

DenseMatrix materialize(const HamiltonianOp& H) {
    const std::size_t n = H.dim();
    if (n > kMaxDenseDim)
        throw DomainError("materialize: sector dimension " + std::to_string(n) +
                          " exceeds dense limit " + std::to_string(kMaxDenseDim));
    DenseMatrix M;
    M.dim = n;
    M.entries.assign(n * n, 0.0);
    std::vector<double> e(n, 0.0), col(n);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        H.apply(e, col);
        e[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i) M.at(i, j) = col[i];
    }
    return M;
}

}  // namespace xxz
