#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tqc/effective.hpp"

namespace tqc {

struct QmcConfig {
    double beta = 64.0;
    long therm_sweeps = 2000;
    long meas_sweeps = 10000;
    int n_bins = 20;
    int slices = 4;  // equal-time slices averaged per measurement sweep
    std::uint64_t seed = 1;
    bool allow_disconnected = false;  // decoupled models are declined by default
};

struct QmcEstimate {
    double mean_abs_m = 0, stderr_abs_m = 0;
    double mean_m = 0, stderr_m = 0;  // signed; vanishes by symmetry
    double m2 = 0, stderr_m2 = 0;
    double m4 = 0, stderr_m4 = 0;
    double binder = 0, stderr_binder = 0;  // 1 - <m^4>/(3 <m^2>^2), jackknifed over bins
    double mean_sx = 0;                     // kink-density estimator of <sigma^x>
    double clusters_per_segment = 0;        // diagnostics
    double beta = 0;
    long sweeps = 0;
    std::uint64_t seed = 0;
};

// Continuous-time Swendsen-Wang cluster QMC for a ferromagnetic two-body
// transverse-field model.  The estimators are equal-time slice moments of
// m = sum sigma^z / n, so they match exact-diagonalization thermal values
// directly.  Deterministic per seed.
QmcEstimate qmc_run(const EffectiveModel& model, const QmcConfig& cfg);

// max(2*max(M,D), 64): the ground-state projection must track the growing
// direction of the lattice.
double default_beta(const EffectiveModel& model);

struct QmcSweepPoint {
    double p = 0;
    QmcEstimate est;
    bool failed = false;
    std::string error;
};

// One estimate per grid point; per-point seeds derive from the master seed,
// failures are recorded and the sweep continues.
std::vector<QmcSweepPoint> qmc_sweep(const CodeLattice& lat, Axis axis,
                                     const std::vector<double>& grid, double fixed_other,
                                     const QmcConfig& tmpl);

} // namespace tqc
