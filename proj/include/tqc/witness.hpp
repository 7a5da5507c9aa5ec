#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tqc/effective.hpp"
#include "tqc/exact_diag.hpp"
#include "tqc/lattice.hpp"

namespace tqc {

// Stabilizer subset {S_alpha} witnessing entanglement on the vertical
// non-trivial loop Omega.  S_1 restricts to XX...X on Omega, every S_alpha
// (alpha >= 2) to Z_1 Z_alpha.
struct WitnessSet {
    std::vector<std::size_t> omega;        // loop qubits in chain order
    std::vector<PauliString> stabilizers;  // S_1 .. S_n on the full lattice
    std::vector<PauliString> reduced;      // restrictions to omega
    std::vector<int> s1_effective_spins;   // image of S_1 under the mapping
};

WitnessSet construct_witness_set(const CodeLattice& lat, const Loop& loop);

struct ConditionReport {
    bool independent_commuting = false;  // (1) n independent commuting stabilizers
    bool reduced_ok = false;             // (2) reduced independent, mutually commuting
    bool outside_commuting = false;      // (3) single-qubit parts outside Omega commute
    bool rank_ok = false;                // (4) pseudoincidence matrix has rank n-1
    std::size_t pseudo_rank = 0;
    Eigen::MatrixXi pseudoincidence;     // n rows, C(n,2) columns; first n-1
                                         // columns pair S_1 with S_alpha
    bool all() const { return independent_commuting && reduced_ok && outside_commuting && rank_ok; }
};

ConditionReport verify_conditions(const WitnessSet& ws);

// True iff the reduced set stabilizes exactly the n-qubit GHZ state
// (dense check, n <= 10).
bool ghz_check(const WitnessSet& ws);

// w = -<S_1>/2, valid when <Z_P> = +1 for every plaquette.
inline double witness_expectation_fast(double s1_expectation) { return -s1_expectation / 2.0; }

// Tr(W rho) for an arbitrary pure state via the full 2^n-subset expansion
// of the projector product; n capped at 16.
double witness_expectation_general(const Eigen::VectorXcd& state, const WitnessSet& ws);

// Lower bound on localizable genuine multipartite entanglement (geometric
// measure):  (1 - sqrt(1 - 4 w^2)) / 2 for w < 0, else 0.
double lower_bound_gm(double w);
// Lower bound on localizable bipartite entanglement (negativity): -2w.
double lower_bound_negativity(double w);

// Central finite differences on a uniform-ish grid; one-sided at the ends.
std::vector<SweepPoint> witness_derivative(const std::vector<SweepPoint>& w_of_p);

// w(p) along a parameter sweep, from the effective model (map_ed) or the
// full code (ed); warm-started along the grid.
enum class WitnessMethod { map_ed, full_ed };
std::vector<SweepPoint> witness_sweep(const CodeLattice& lat, Axis axis,
                                      const std::vector<double>& grid, double fixed_other,
                                      WitnessMethod method, const EdOptions& opt = {});

} // namespace tqc
