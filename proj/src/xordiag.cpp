#include "tqc/xordiag.hpp"

#include <bit>
#include <stdexcept>

namespace tqc {

void XorDiagMap::apply(const double* x, double* y) const {
    const std::size_t n = dim();
    for (std::size_t s = 0; s < n; ++s) y[s] = diag[s] * x[s];
    // Term-major passes: for fixed m the access x[s ^ m] is piecewise
    // sequential, which is what matters at large dimensions.
    for (const auto& [m, c] : flips) {
        const std::size_t mm = m;
        for (std::size_t s = 0; s < n; ++s) y[s] += c * x[s ^ mm];
    }
}

SectorBasis::SectorBasis(std::size_t n_qubits,
                         const std::vector<std::vector<std::size_t>>& parity_supports,
                         const std::vector<int>& parities)
    : n_(n_qubits) {
    if (n_ > 63) throw std::invalid_argument("SectorBasis: more than 63 qubits unsupported");
    // GF(2) elimination of the augmented parity-check matrix [A|b]; rows as
    // 64-bit masks with the rhs bit stored at position n_.
    std::vector<std::uint64_t> rows;
    for (std::size_t k = 0; k < parity_supports.size(); ++k) {
        std::uint64_t r = 0;
        for (auto q : parity_supports[k]) r |= std::uint64_t(1) << q;
        if (k < parities.size() && (parities[k] & 1)) r |= std::uint64_t(1) << n_;
        rows.push_back(r);
    }
    std::vector<int> pivot_of_row;
    std::size_t rank = 0;
    std::vector<bool> is_pivot(n_, false);
    for (std::size_t col = 0; col < n_ && rank < rows.size(); ++col) {
        const std::uint64_t m = std::uint64_t(1) << col;
        std::size_t piv = rank;
        while (piv < rows.size() && !(rows[piv] & m)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && (rows[r] & m)) rows[r] ^= rows[rank];
        is_pivot[col] = true;
        pivot_of_row.push_back(int(col));
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r] & (std::uint64_t(1) << n_))
            throw std::invalid_argument("SectorBasis: inconsistent parity constraints");
    rows.resize(rank);
    for (std::size_t q = 0; q < n_; ++q)
        if (!is_pivot[q]) free_cols_.push_back(q);
    if (free_cols_.size() > 40)
        throw std::invalid_argument("SectorBasis: sector dimension too large");
    // Rows are in reduced form: each row = pivot bit + free bits + rhs.
    // Particular solution: free bits zero, pivot bit = rhs.
    particular_ = 0;
    for (std::size_t r = 0; r < rank; ++r)
        if (rows[r] & (std::uint64_t(1) << n_))
            particular_ |= std::uint64_t(1) << pivot_of_row[r];
    free_solution_.assign(free_cols_.size(), 0);
    for (std::size_t j = 0; j < free_cols_.size(); ++j) {
        std::uint64_t z = std::uint64_t(1) << free_cols_[j];
        for (std::size_t r = 0; r < rank; ++r)
            if (rows[r] & (std::uint64_t(1) << free_cols_[j]))
                z |= std::uint64_t(1) << pivot_of_row[r];
        free_solution_[j] = z;
    }
}

std::uint64_t SectorBasis::state(std::uint64_t index) const {
    std::uint64_t z = particular_;
    std::uint64_t idx = index;
    while (idx) {
        const int j = std::countr_zero(idx);
        z ^= free_solution_[j];
        idx &= idx - 1;
    }
    return z;
}

std::uint64_t SectorBasis::index_of(std::uint64_t state) const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < free_cols_.size(); ++j)
        idx |= ((state >> free_cols_[j]) & 1u) << j;
    return idx;
}

std::uint64_t SectorBasis::index_mask(std::uint64_t qubit_mask) const {
    return index_of(qubit_mask);  // bit extraction is linear over GF(2)
}

std::uint64_t support_mask(const PauliString& p) {
    if (p.n_qubits() > 63) throw std::invalid_argument("support_mask: too many qubits");
    std::uint64_t m = 0;
    for (auto q : p.support()) m |= std::uint64_t(1) << q;
    return m;
}

XorDiagMap sector_map(const SparseHamiltonian& h, const SectorBasis& basis) {
    XorDiagMap map;
    map.n_index_bits = basis.n_free();
    const std::size_t dim = map.dim();

    struct ZTerm { std::uint64_t mask; double coeff; };
    std::vector<ZTerm> zterms;
    double constant = 0.0;
    for (const auto& t : h.terms) {
        bool has_x = false, has_z = false;
        for (std::size_t q = 0; q < t.op.n_qubits(); ++q) {
            has_x |= t.op.x_bit(q);
            has_z |= t.op.z_bit(q);
        }
        if (has_x && has_z)
            throw std::invalid_argument("sector_map: mixed XZ terms unsupported");
        if (t.op.phase_exp() != 0)
            throw std::invalid_argument("sector_map: terms must carry phase +1");
        std::uint64_t m = support_mask(t.op);
        if (has_x) {
            map.flips.emplace_back(basis.index_mask(m), t.coeff);
        } else if (has_z) {
            zterms.push_back({m, t.coeff});
        } else {
            constant += t.coeff;
        }
    }

    map.diag.resize(dim);
    // Gray-code walk keeps the decoded state incremental.
    std::uint64_t z = basis.state(0);
    auto eval = [&](std::uint64_t zz) {
        double d = constant;
        for (const auto& zt : zterms)
            d += (std::popcount(zz & zt.mask) & 1) ? -zt.coeff : zt.coeff;
        return d;
    };
    map.diag[0] = eval(z);
    const std::uint64_t z0 = basis.state(0);
    for (std::size_t s = 1; s < dim; ++s) {
        const std::uint64_t gray_prev = (s - 1) ^ ((s - 1) >> 1);
        const std::uint64_t gray = s ^ (s >> 1);
        const int j = std::countr_zero(gray ^ gray_prev);
        z ^= basis.state(std::uint64_t(1) << j) ^ z0;  // homogeneous step
        map.diag[gray] = eval(z);
    }
    return map;
}

} // namespace tqc
