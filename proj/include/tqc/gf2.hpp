#pragma once

#include <cstdint>
#include <vector>

namespace tqc {

// Dense GF(2) row-reduction helpers on 64-bit word rows.

inline std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows, std::size_t n_bits) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n_bits && rank < rows.size(); ++col) {
        const std::size_t w = col >> 6;
        const std::uint64_t m = std::uint64_t(1) << (col & 63);
        std::size_t piv = rank;
        while (piv < rows.size() && !(rows[piv][w] & m)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && (rows[r][w] & m))
                for (std::size_t k = 0; k < rows[r].size(); ++k) rows[r][k] ^= rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

// True iff target lies in the GF(2) row span of basis.
inline bool gf2_in_span(const std::vector<std::vector<std::uint64_t>>& basis,
                        const std::vector<std::uint64_t>& target, std::size_t n_bits) {
    auto with = basis;
    with.push_back(target);
    return gf2_rank(basis, n_bits) == gf2_rank(with, n_bits);
}

} // namespace tqc
