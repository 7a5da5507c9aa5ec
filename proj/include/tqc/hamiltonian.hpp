#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tqc/lattice.hpp"
#include "tqc/pauli.hpp"

namespace tqc {

struct Term {
    double coeff;
    PauliString op;
};

// Pauli-sum Hamiltonian.  All terms must be Hermitian with real matrix
// elements in the computational basis (even Y count, phase +-1), which the
// sparse solvers rely on.
struct SparseHamiltonian {
    std::size_t n_qubits = 0;
    std::vector<Term> terms;

    std::size_t dimension() const { return std::size_t(1) << n_qubits; }
};

// H = H_K - g sum_i sigma^z_i - lambda sum_<ij> sigma^z_i sigma^z_j for the
// Kitaev families, H = H_C - g sum_i sigma^z_i for the color families
// (lambda must be zero there).  Term count is N_P + N_V + N + |nn_pairs|.
SparseHamiltonian assemble(const CodeLattice& lat, double g, double lambda);

// Dense oracle for cross-validation; throws above the qubit cap.
Eigen::MatrixXcd dense_matrix(const SparseHamiltonian& h, std::size_t max_qubits = 14);

} // namespace tqc
