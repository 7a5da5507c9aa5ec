#pragma once

#include <cstdint>
#include <vector>

#include "tqc/hamiltonian.hpp"

namespace tqc {

// Hamiltonian in a basis indexed by b in [0, 2^f): a diagonal array plus
// off-diagonal flip terms y[s] += c * x[s ^ mask].  Both the constrained
// stabilizer sectors and the effective transverse-field models reduce to
// this shape, so one matvec serves all of them.
struct XorDiagMap {
    std::size_t n_index_bits = 0;
    std::vector<double> diag;
    std::vector<std::pair<std::uint64_t, double>> flips;  // (index mask, coefficient)

    std::size_t dim() const { return std::size_t(1) << n_index_bits; }
    void apply(const double* x, double* y) const;
};

// Basis of the set of N-qubit computational states satisfying parity
// constraints (each given by its qubit support and target parity, default
// even).  States are indexed by their free bits; constraint solving is
// plain GF(2) elimination.
class SectorBasis {
public:
    SectorBasis(std::size_t n_qubits, const std::vector<std::vector<std::size_t>>& parity_supports,
                const std::vector<int>& parities = {});

    std::size_t n_qubits() const { return n_; }
    std::size_t n_free() const { return free_cols_.size(); }
    std::size_t dim() const { return std::size_t(1) << n_free(); }

    // Full bitstring of basis state with the given index.
    std::uint64_t state(std::uint64_t index) const;
    // Index of a sector state (inverse of state(); assumes membership).
    std::uint64_t index_of(std::uint64_t state) const;
    // Index-space XOR mask of a qubit-space flip mask that preserves the
    // sector (e.g. an X stabilizer support).
    std::uint64_t index_mask(std::uint64_t qubit_mask) const;

private:
    std::size_t n_;
    std::vector<std::size_t> free_cols_;
    std::vector<std::uint64_t> free_solution_;  // homogeneous solution with free bit j set
    std::uint64_t particular_ = 0;              // free bits zero; nonzero for odd parities
};

// Build the XorDiagMap of a Pauli-sum Hamiltonian restricted to a sector.
// Diagonal terms must be pure-Z, off-diagonal pure-X with supports that
// preserve the sector.
XorDiagMap sector_map(const SparseHamiltonian& h, const SectorBasis& basis);

// Pack a pure-X or pure-Z Pauli support into a 64-bit mask.
std::uint64_t support_mask(const PauliString& p);

} // namespace tqc
