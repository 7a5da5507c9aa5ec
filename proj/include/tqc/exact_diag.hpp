#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "tqc/hamiltonian.hpp"
#include "tqc/lattice.hpp"
#include "tqc/solver.hpp"
#include "tqc/xordiag.hpp"

namespace tqc {

enum class Axis { field, ising };
inline const char* axis_name(Axis a) { return a == Axis::field ? "g" : "lambda"; }

struct EdOptions {
    double tol = 1e-10;
    int max_iter = 5000;
    std::uint64_t seed = 0x5eed;
    double fs_delta = 1e-3;  // finite step for the fidelity susceptibility
};

inline std::pair<double, double> axis_params(Axis a, double p, double fixed_other) {
    return a == Axis::field ? std::make_pair(p, fixed_other) : std::make_pair(fixed_other, p);
}

// Computation sector: Z_P = +1 for every plaquette and, when fix_logical,
// +1 for every z-type loop operator (the degeneracy-resolution policy for
// fidelity and observables).  logical_parity flips the z-loop sector and is
// used for the sector-resolved gap.
std::shared_ptr<SectorBasis> make_sector_basis(const CodeLattice& lat, bool fix_logical,
                                               int logical_parity = 0);

struct SectorState {
    double energy = 0;
    double residual = 0;
    std::vector<double> vec;
    std::shared_ptr<SectorBasis> basis;
};

SectorState sector_ground_state(const CodeLattice& lat, double g, double lambda,
                                const EdOptions& opt, std::shared_ptr<SectorBasis> basis = nullptr,
                                const std::vector<double>* warm = nullptr);

// <state|op|state> for a phase-+1 pure-X or pure-Z operator, evaluated in the
// sector basis.
double sector_expectation(const SectorState& s, const PauliString& op);

// |<psi(p1)|psi(p2)>| with both ground states resolved in the fixed logical
// sector.
double fidelity(const CodeLattice& lat, Axis axis, double p1, double p2, double fixed_other,
                const EdOptions& opt = {});

// chi(p) = -2 log f(p - d/2, p + d/2) / d^2
double fidelity_susceptibility(const CodeLattice& lat, Axis axis, double p, double fixed_other,
                               const EdOptions& opt = {});

struct SweepPoint {
    double p = 0;
    double value = 0;
    double residual = 0;
};

// chi over a sorted grid, with warm-started solves along the sweep.
std::vector<SweepPoint> fs_sweep(const CodeLattice& lat, Axis axis,
                                 const std::vector<double>& grid, double fixed_other,
                                 const EdOptions& opt = {});

// E1 - E0 of the full Hamiltonian restricted to the Z_P = +1 sector (both
// logical branches merged), capped at the plaquette-flip cost 2.
std::vector<SweepPoint> energy_gap(const CodeLattice& lat, Axis axis,
                                   const std::vector<double>& grid, double fixed_other,
                                   const EdOptions& opt = {});

// Full-space statevector helpers for small-n oracles and the general
// witness path.
Eigen::VectorXcd apply_pauli(const PauliString& p, const Eigen::VectorXcd& v);
std::complex<double> expectation(const Eigen::VectorXcd& v, const PauliString& p);

} // namespace tqc
