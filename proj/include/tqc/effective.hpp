#pragma once

#include <string>
#include <vector>

#include "tqc/exact_diag.hpp"
#include "tqc/lattice.hpp"

namespace tqc {

// One z-coupling of the effective model.  The coefficient is kept as exact
// integer multiples of g and lambda so closed-form comparisons are exact.
struct EffCoupling {
    std::vector<int> spins;  // sorted effective-spin indices, size >= 2
    long n_g = 0;
    long n_lambda = 0;
};

struct EffectiveModel {
    std::size_t n_spins = 0;
    double g = 0, lambda = 0;
    std::vector<EffCoupling> couplings;
    double offset = 0;  // energy shift; -N_P in the Z_P = +1 sector
    CodeFamily family{};
    Boundary boundary{};
    int M = 0, D = 0;
    std::vector<std::pair<int, int>> spin_coords;

    double coupling_value(const EffCoupling& c) const { return c.n_g * g + c.n_lambda * lambda; }
    std::size_t max_body() const;
    bool two_body_only() const { return max_body() <= 2; }
    std::string dump() const;
};

// Generic anticommutation-pattern mapping of the perturbed code onto its
// effective transverse-field model: each pure-Z perturbation term turns into
// a z-coupling on the effective spins whose X-stabilizer anticommutes with
// it, plus one transverse term of coefficient -1 per spin.
EffectiveModel map_model(const CodeLattice& lat, double g, double lambda);

// Image of a product of X-type stabilizers: the effective-spin set carrying
// sigma^x factors.  Throws if op is not in the X-stabilizer group.
std::vector<int> map_operator(const CodeLattice& lat, const PauliString& op);

// ED on the effective model.  Kitaev models (two-body couplings) run in the
// global spin-flip symmetric sector; Baxter-Wu models use the full basis.
struct EffGroundState {
    double energy = 0;
    double residual = 0;
    bool symmetric_sector = false;
    std::size_t n_spins = 0;
    std::vector<double> vec;
};

XorDiagMap effective_xordiag(const EffectiveModel& m, bool symmetric_sector);
EffGroundState effective_ground_state(const EffectiveModel& m, const EdOptions& opt = {},
                                      const std::vector<double>* warm = nullptr);
// <prod_{i in spins} sigma^x_i> in the effective ground state.
double effective_x_expectation(const EffGroundState& s, const std::vector<int>& spins);
// <|sum_i sigma^z_i| / n> in the effective ground state.
double effective_abs_m(const EffGroundState& s);

struct SpectrumCheckReport {
    double e0_full = 0, e0_eff = 0, offset = 0;
    double s1_full = 0, s1_eff = 0;
    bool energy_ok = false, witness_ok = false;
    std::string detail;
};

// Asserts E0(H) = E0(H~) + offset and <S1>_full = <S1~>_eff on instances
// small enough to solve both ways.
SpectrumCheckReport spectrum_check(const CodeLattice& lat, double g, double lambda,
                                   const EdOptions& opt = {}, double tol_energy = 1e-9,
                                   double tol_witness = 1e-8);

} // namespace tqc
