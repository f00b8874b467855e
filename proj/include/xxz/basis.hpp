#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace xxz {

inline constexpr int kMaxSites = 24;

// One fixed-magnetization sector of an L-site spin-1/2 chain.
// Bit j of a state is the spin at site j (1 = up).  States are stored in
// ascending order; the ordinal of a state is its position in that list.
struct SpinBasis {
    int L = 0;
    int n_up = 0;
    std::vector<std::uint64_t> states;

    std::size_t size() const { return states.size(); }

    // Ordinal of `state` within the sector.  Throws LookupError if the
    // state does not belong to it.
    std::size_t index_of(std::uint64_t state) const;

    bool contains(std::uint64_t state) const;
};

// Enumerate the sector.  2 <= L <= 24, 0 <= n_up <= L.
SpinBasis build_basis(int L, int n_up);

inline std::size_t state_index(const SpinBasis& basis, std::uint64_t state) {
    return basis.index_of(state);
}

std::uint64_t binomial(int n, int k);

}  // namespace xxz
