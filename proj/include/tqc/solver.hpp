#pragma once

#include <cstdint>
#include <vector>

#include "tqc/xordiag.hpp"

namespace tqc {

struct EigenSolution {
    std::vector<double> eigenvalues;                 // ascending
    std::vector<std::vector<double>> eigenvectors;   // unit norm, one per eigenvalue
    std::vector<double> residual_norms;              // ||Hv - Ev||
    std::vector<int> iterations;
};

struct LanczosOptions {
    double tol = 1e-10;
    int max_iter = 5000;
    std::uint64_t seed = 0x5eed;
    bool want_vectors = true;
    const std::vector<double>* warm_start = nullptr;  // optional start vector
};

// Lowest k eigenpairs of a symmetric XorDiagMap by memory-lean two-pass
// Lanczos with sequential deflation.  Deterministic for a fixed seed; throws
// on non-convergence with the residual in the message.
EigenSolution lanczos_lowest(const XorDiagMap& map, int k, const LanczosOptions& opt = {});

// Deterministic 64-bit stream used for start vectors and QMC seeding.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }  // [0,1)
};

std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b);

} // namespace tqc
