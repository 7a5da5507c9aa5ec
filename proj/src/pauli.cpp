#include "tqc/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace tqc {

namespace {
std::size_t words_for(std::size_t n) { return (n + 63) / 64; }
}

PauliString::PauliString(std::size_t n)
    : n_(n), phase_(0), x_(words_for(n), 0), z_(words_for(n), 0) {}

PauliString PauliString::identity(std::size_t n) { return PauliString(n); }

PauliString PauliString::single_x(std::size_t n, std::size_t q) {
    PauliString p(n);
    p.set_x(q, true);
    return p;
}

PauliString PauliString::single_z(std::size_t n, std::size_t q) {
    PauliString p(n);
    p.set_z(q, true);
    return p;
}

PauliString PauliString::x_string(std::size_t n, const std::vector<std::size_t>& support) {
    PauliString p(n);
    for (auto q : support) p.set_x(q, true);
    return p;
}

PauliString PauliString::z_string(std::size_t n, const std::vector<std::size_t>& support) {
    PauliString p(n);
    for (auto q : support) p.set_z(q, true);
    return p;
}

bool PauliString::x_bit(std::size_t q) const {
    return (x_[q >> 6] >> (q & 63)) & 1u;
}

bool PauliString::z_bit(std::size_t q) const {
    return (z_[q >> 6] >> (q & 63)) & 1u;
}

void PauliString::set_x(std::size_t q, bool v) {
    if (q >= n_) throw std::out_of_range("PauliString: qubit index out of range");
    std::uint64_t m = std::uint64_t(1) << (q & 63);
    if (v) x_[q >> 6] |= m; else x_[q >> 6] &= ~m;
}

void PauliString::set_z(std::size_t q, bool v) {
    if (q >= n_) throw std::out_of_range("PauliString: qubit index out of range");
    std::uint64_t m = std::uint64_t(1) << (q & 63);
    if (v) z_[q >> 6] |= m; else z_[q >> 6] &= ~m;
}

std::complex<double> PauliString::phase() const {
    static const std::complex<double> tab[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return tab[phase_];
}

bool PauliString::is_identity() const {
    if (phase_ != 0) return false;
    for (std::size_t w = 0; w < x_.size(); ++w)
        if (x_[w] != 0 || z_[w] != 0) return false;
    return true;
}

std::size_t PauliString::weight() const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < x_.size(); ++w)
        c += std::popcount(x_[w] | z_[w]);
    return c;
}

std::vector<std::size_t> PauliString::support() const {
    std::vector<std::size_t> s;
    for (std::size_t q = 0; q < n_; ++q)
        if (x_bit(q) || z_bit(q)) s.push_back(q);
    return s;
}

bool PauliString::equals(const PauliString& o) const {
    return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
}

bool PauliString::equals_up_to_phase(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
}

std::string PauliString::to_string() const {
    // The letter Y stands for the true Pauli Y = i*XZ, so each Y absorbs one
    // factor of i from the stored exponent.
    static const char* signs[4] = {"+", "+i", "-", "-i"};
    int n_y = 0;
    std::string body;
    for (std::size_t q = 0; q < n_; ++q) {
        bool x = x_bit(q), z = z_bit(q);
        if (x && z) ++n_y;
        body += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return signs[((phase_ - n_y) % 4 + 4) % 4] + body;
}

PauliString PauliString::from_string(const std::string& s) {
    std::size_t pos = 0;
    int k = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') k = 2;
        ++pos;
    }
    if (pos < s.size() && s[pos] == 'i') {
        k += 1;
        ++pos;
    }
    PauliString p(s.size() - pos);
    for (std::size_t q = 0; pos < s.size(); ++pos, ++q) {
        switch (s[pos]) {
            case 'I': break;
            case 'X': p.set_x(q, true); break;
            case 'Z': p.set_z(q, true); break;
            case 'Y': p.set_x(q, true); p.set_z(q, true); k += 1; break;
            default: throw std::invalid_argument("PauliString::from_string: bad letter");
        }
    }
    p.set_phase_exp(k);
    return p;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("multiply: qubit count mismatch");
    PauliString r(a.n_);
    // (i^ka X^xa Z^za)(i^kb X^xb Z^zb): moving Z^za past X^xb gives (-1)^<za,xb>.
    std::size_t anti = 0;
    for (std::size_t w = 0; w < a.x_.size(); ++w) {
        anti += std::popcount(a.z_[w] & b.x_[w]);
        r.x_[w] = a.x_[w] ^ b.x_[w];
        r.z_[w] = a.z_[w] ^ b.z_[w];
    }
    r.set_phase_exp(a.phase_ + b.phase_ + 2 * static_cast<int>(anti & 1));
    return r;
}

bool commutes(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("commutes: qubit count mismatch");
    std::size_t anti = 0;
    for (std::size_t w = 0; w < a.x_words().size(); ++w)
        anti += std::popcount(a.x_words()[w] & b.z_words()[w]) +
                std::popcount(a.z_words()[w] & b.x_words()[w]);
    return (anti & 1) == 0;
}

PauliString restrict_to(const PauliString& a, const std::vector<std::size_t>& omega) {
    PauliString r(omega.size());
    for (std::size_t k = 0; k < omega.size(); ++k) {
        std::size_t q = omega[k];
        if (q >= a.n_qubits()) throw std::out_of_range("restrict_to: index out of range");
        r.set_x(k, a.x_bit(q));
        r.set_z(k, a.z_bit(q));
    }
    return r;
}

Eigen::MatrixXcd dense_matrix(const PauliString& a, std::size_t max_qubits) {
    if (a.n_qubits() > max_qubits)
        throw std::invalid_argument("dense_matrix: qubit count exceeds oracle cap");
    const std::size_t n = a.n_qubits();
    const std::size_t dim = std::size_t(1) << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    // Column c maps to row c^x with amplitude i^phase * (-1)^<z, c^x ... >;
    // with the X-then-Z ordering, P|c> = i^k (-1)^{<z, c XOR x>} |c XOR x>
    // read as Z acting first on |c>, then X flipping: P = i^k X^x Z^z.
    std::uint64_t xm = 0, zm = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (a.x_bit(q)) xm |= std::uint64_t(1) << q;
        if (a.z_bit(q)) zm |= std::uint64_t(1) << q;
    }
    const std::complex<double> ph = a.phase();
    for (std::uint64_t c = 0; c < dim; ++c) {
        int zsign = std::popcount(c & zm) & 1;
        m(c ^ xm, c) = ph * (zsign ? -1.0 : 1.0);
    }
    return m;
}

} // namespace tqc
