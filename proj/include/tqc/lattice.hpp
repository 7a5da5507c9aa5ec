#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tqc/pauli.hpp"

namespace tqc {

enum class CodeFamily { kitaev_square, kitaev_triangular, color_honeycomb, color_square_octagonal };
enum class Boundary { cylinder, torus };

std::string family_name(CodeFamily f);
CodeFamily family_from_name(const std::string& s);

struct Loop {
    std::string name;            // e.g. "Lx_v", "Lz_h"
    char pauli;                  // 'X' or 'Z'
    std::vector<std::size_t> qubits;  // in chain order along the loop
};

// Geometry plus stabilizer supports for one code instance.  Immutable after
// build; vertex and plaquette index layout is row-major and documented per
// family in lattice.cpp.
struct CodeLattice {
    CodeFamily family;
    Boundary boundary;
    int M = 0;   // vertical extent
    int D = 0;   // horizontal extent (periodic direction)
    std::size_t n_qubits = 0;

    std::vector<std::vector<std::size_t>> plaquettes;      // qubit supports of Z_P
    std::vector<std::vector<std::size_t>> vertices;        // Kitaev: X_V supports; empty for color
    std::vector<int> plaquette_color;                      // color codes: 0/1/2; Kitaev: empty
    std::vector<std::pair<int, int>> vertex_coords;        // Kitaev: (row, col) per vertex
    std::vector<std::pair<int, int>> plaquette_coords;     // per-plaquette (anchor row, col)
    std::vector<std::pair<std::size_t, std::size_t>> nn_pairs;  // qubit pairs for the Ising term
    std::vector<Loop> loops;

    // Witness construction ingredients: the vertical x-type loop is loops[0];
    // s1 is the list of x-stabilizer indices whose product restricts to
    // XX...X on the loop, and z_chain[k] is the list of plaquette indices
    // whose Z-product restricts to Z_{q_k} Z_{q_{k+1}} on the loop.
    std::vector<std::size_t> witness_s1_xstabs;
    std::vector<std::vector<std::size_t>> witness_z_chain;

    bool is_color() const {
        return family == CodeFamily::color_honeycomb || family == CodeFamily::color_square_octagonal;
    }
    std::size_t n_plaquettes() const { return plaquettes.size(); }
    std::size_t n_vertices() const { return vertices.size(); }

    PauliString z_plaquette(std::size_t p) const;
    PauliString x_vertex(std::size_t v) const;    // X_V (Kitaev) or X_P (color)
    std::vector<PauliString> z_stabilizers() const;
    std::vector<PauliString> x_stabilizers() const;
    PauliString loop_operator(const Loop& l) const;

    // 2^(N - rank) of the stabilizer group, computed exactly over GF(2).
    std::size_t ground_space_dimension() const;

    std::string dump() const;  // plain-text listing for the CLI and golden files
};

// Kitaev code on the square or triangular lattice.  Cylinder: PBC along the
// horizontal direction, open boundary vertically, vertex operators truncated
// at the boundary.  Torus mode (square/triangular only) wraps both ways.
// Preconditions: M >= 2, D >= 3 (cylinder); M >= 3 for torus.
CodeLattice build_kitaev(CodeFamily shape, int M, int D, Boundary boundary = Boundary::cylinder);

// Color code on the honeycomb or square-octagonal lattice, cylinder only.
// D must be even.  Honeycomb requires M >= 3 with M % 3 == 0 (smaller or
// misaligned heights leave no stabilizer constraint and a unique ground
// state); square-octagonal requires M >= 2.
CodeLattice build_color(CodeFamily shape, int M, int D);

// Named non-trivial loop operators of the lattice.
std::vector<Loop> nontrivial_loops(const CodeLattice& lat);

} // namespace tqc
