#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tqc {

// N-qubit Pauli operator in symplectic form.  Internally a string is
//   i^phase_exp * prod_q X_q^{x_q} Z_q^{z_q}
// with the XZ ordering per qubit, so Y = i*X*Z carries phase_exp 1.
// All stabilizers used in this project are pure-X or pure-Z strings with
// phase +1; the general phase bookkeeping exists for the algebra tests
// and the witness machinery.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::size_t n_qubits);

    static PauliString identity(std::size_t n);
    static PauliString single_x(std::size_t n, std::size_t q);
    static PauliString single_z(std::size_t n, std::size_t q);
    static PauliString x_string(std::size_t n, const std::vector<std::size_t>& support);
    static PauliString z_string(std::size_t n, const std::vector<std::size_t>& support);

    std::size_t n_qubits() const { return n_; }
    bool x_bit(std::size_t q) const;
    bool z_bit(std::size_t q) const;
    void set_x(std::size_t q, bool v);
    void set_z(std::size_t q, bool v);

    // phase as an exponent of i, in {0,1,2,3}
    int phase_exp() const { return phase_; }
    std::complex<double> phase() const;
    void set_phase_exp(int k) { phase_ = ((k % 4) + 4) % 4; }

    bool is_identity() const;
    std::size_t weight() const;                 // number of non-identity sites
    std::vector<std::size_t> support() const;   // sorted non-identity sites

    bool equals(const PauliString& o) const;
    bool equals_up_to_phase(const PauliString& o) const;

    std::string to_string() const;              // e.g. "+XIZY"
    static PauliString from_string(const std::string& s);

    const std::vector<std::uint64_t>& x_words() const { return x_; }
    const std::vector<std::uint64_t>& z_words() const { return z_; }

    friend PauliString multiply(const PauliString& a, const PauliString& b);
    friend bool commutes(const PauliString& a, const PauliString& b);

private:
    std::size_t n_ = 0;
    int phase_ = 0;
    std::vector<std::uint64_t> x_, z_;
};

// Operator product a*b with exact phase tracking.  Throws on size mismatch.
PauliString multiply(const PauliString& a, const PauliString& b);

// True iff the symplectic form <a.x,b.z> + <a.z,b.x> is even.
bool commutes(const PauliString& a, const PauliString& b);

// Tensor factor of a supported on omega (indices into a, in the given order;
// the result acts on omega.size() qubits).  Phase is dropped by convention.
// Throws on out-of-range indices.
PauliString restrict_to(const PauliString& a, const std::vector<std::size_t>& omega);

// Exact dense matrix, for cross-validation only.  Capped at a small qubit
// count; throws above the cap.
Eigen::MatrixXcd dense_matrix(const PauliString& a, std::size_t max_qubits = 14);

} // namespace tqc
