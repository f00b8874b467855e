#include "xxz/basis.hpp"

#include <algorithm>
#include <bit>

#include "xxz/errors.hpp"

namespace xxz {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t c = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / i;
    return c;
}

SpinBasis build_basis(int L, int n_up) {
    if (L < 2 || L > kMaxSites)
        throw DomainError("build_basis: L must be in [2, 24], got " + std::to_string(L));
    if (n_up < 0 || n_up > L)
        throw DomainError("build_basis: n_up must be in [0, L], got " + std::to_string(n_up));

    SpinBasis basis;
    basis.L = L;
    basis.n_up = n_up;
    basis.states.reserve(binomial(L, n_up));

    if (n_up == 0) {
        basis.states.push_back(0);
        return basis;
    }

    // Gosper's hack walks the n_up-bit patterns in ascending order.
    const std::uint64_t limit = std::uint64_t{1} << L;
    std::uint64_t s = (std::uint64_t{1} << n_up) - 1;
    while (s < limit) {
        basis.states.push_back(s);
        const std::uint64_t c = s & (~s + 1);
        const std::uint64_t r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
        if (c == 0) break;  // n_up == 64 guard, unreachable for L <= 24
    }
    return basis;
}

std::size_t SpinBasis::index_of(std::uint64_t state) const {
    const auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || *it != state)
        throw LookupError("state_index: state not in sector (L=" + std::to_string(L) +
                          ", n_up=" + std::to_string(n_up) + ")");
    return static_cast<std::size_t>(it - states.begin());
}

bool SpinBasis::contains(std::uint64_t state) const {
    if (std::popcount(state) != n_up) return false;
    if (L < 64 && (state >> L) != 0) return false;
    return std::binary_search(states.begin(), states.end(), state);
}

}  // namespace xxz
