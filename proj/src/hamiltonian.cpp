#include "tqc/hamiltonian.hpp"

#include <stdexcept>

namespace tqc {

SparseHamiltonian assemble(const CodeLattice& lat, double g, double lambda) {
    if (g < 0 || lambda < 0)
        throw std::invalid_argument("assemble: g and lambda must be non-negative");
    if (lat.is_color() && lambda != 0.0)
        throw std::invalid_argument("assemble: color code takes a field perturbation only");
    SparseHamiltonian h;
    h.n_qubits = lat.n_qubits;
    for (std::size_t p = 0; p < lat.n_plaquettes(); ++p)
        h.terms.push_back({-1.0, lat.z_plaquette(p)});
    const std::size_t nx = lat.is_color() ? lat.n_plaquettes() : lat.n_vertices();
    for (std::size_t v = 0; v < nx; ++v)
        h.terms.push_back({-1.0, lat.x_vertex(v)});
    for (std::size_t i = 0; i < lat.n_qubits; ++i)
        h.terms.push_back({-g, PauliString::single_z(lat.n_qubits, i)});
    if (!lat.is_color())
        for (const auto& [i, j] : lat.nn_pairs)
            h.terms.push_back({-lambda, PauliString::z_string(lat.n_qubits, {i, j})});
    return h;
}

Eigen::MatrixXcd dense_matrix(const SparseHamiltonian& h, std::size_t max_qubits) {
    if (h.n_qubits > max_qubits)
        throw std::invalid_argument("dense_matrix: qubit count exceeds oracle cap");
    const std::size_t dim = h.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : h.terms) m += t.coeff * dense_matrix(t.op);
    return m;
}

} // namespace tqc
