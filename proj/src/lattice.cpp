#include "tqc/lattice.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tqc/gf2.hpp"

namespace tqc {

std::string family_name(CodeFamily f) {
    switch (f) {
        case CodeFamily::kitaev_square: return "kitaev_square";
        case CodeFamily::kitaev_triangular: return "kitaev_triangular";
        case CodeFamily::color_honeycomb: return "color_honeycomb";
        case CodeFamily::color_square_octagonal: return "color_square_octagonal";
    }
    return "?";
}

CodeFamily family_from_name(const std::string& s) {
    if (s == "kitaev_square" || s == "square") return CodeFamily::kitaev_square;
    if (s == "kitaev_triangular" || s == "triangular") return CodeFamily::kitaev_triangular;
    if (s == "color_honeycomb" || s == "honeycomb") return CodeFamily::color_honeycomb;
    if (s == "color_square_octagonal" || s == "square_octagonal")
        return CodeFamily::color_square_octagonal;
    throw std::invalid_argument("unknown code family: " + s);
}

PauliString CodeLattice::z_plaquette(std::size_t p) const {
    return PauliString::z_string(n_qubits, plaquettes.at(p));
}

PauliString CodeLattice::x_vertex(std::size_t v) const {
    if (is_color()) return PauliString::x_string(n_qubits, plaquettes.at(v));
    return PauliString::x_string(n_qubits, vertices.at(v));
}

std::vector<PauliString> CodeLattice::z_stabilizers() const {
    std::vector<PauliString> out;
    out.reserve(plaquettes.size());
    for (std::size_t p = 0; p < plaquettes.size(); ++p) out.push_back(z_plaquette(p));
    return out;
}

std::vector<PauliString> CodeLattice::x_stabilizers() const {
    std::vector<PauliString> out;
    const std::size_t n = is_color() ? plaquettes.size() : vertices.size();
    out.reserve(n);
    for (std::size_t v = 0; v < n; ++v) out.push_back(x_vertex(v));
    return out;
}

PauliString CodeLattice::loop_operator(const Loop& l) const {
    return l.pauli == 'X' ? PauliString::x_string(n_qubits, l.qubits)
                          : PauliString::z_string(n_qubits, l.qubits);
}

std::size_t CodeLattice::ground_space_dimension() const {
    // Symplectic GF(2) rows (x-part | z-part); degeneracy = 2^(N - rank).
    const std::size_t nb = 2 * n_qubits;
    const std::size_t nw = (nb + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    auto add_row = [&](const std::vector<std::size_t>& support, bool as_x) {
        std::vector<std::uint64_t> row(nw, 0);
        for (auto q : support) {
            std::size_t bit = as_x ? q : q + n_qubits;
            row[bit >> 6] |= std::uint64_t(1) << (bit & 63);
        }
        rows.push_back(std::move(row));
    };
    for (const auto& p : plaquettes) add_row(p, false);
    if (is_color()) {
        for (const auto& p : plaquettes) add_row(p, true);
    } else {
        for (const auto& v : vertices) add_row(v, true);
    }
    std::size_t rank = gf2_rank(rows, nb);
    return std::size_t(1) << (n_qubits - rank);
}

namespace {

struct Builder {
    CodeLattice lat;
    std::size_t add_plaquette(std::vector<std::size_t> q, int color, int ar, int ac) {
        lat.plaquettes.push_back(std::move(q));
        lat.plaquette_color.push_back(color);
        lat.plaquette_coords.emplace_back(ar, ac);
        return lat.plaquettes.size() - 1;
    }
};

int imod(int a, int m) { return ((a % m) + m) % m; }

// Qubits sharing a vertex and lying in a common plaquette.  For the square
// lattice this keeps exactly the perpendicular edge pairs at each vertex
// (the diagonal NNN pattern of the effective model); collinear pairs drop
// out because they never share a face.
void derive_nn_pairs(CodeLattice& lat) {
    std::vector<std::set<std::size_t>> vertex_sets;
    for (const auto& v : lat.vertices) vertex_sets.emplace_back(v.begin(), v.end());
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& p : lat.plaquettes) {
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = a + 1; b < p.size(); ++b) {
                bool share_vertex = false;
                for (const auto& vs : vertex_sets)
                    if (vs.count(p[a]) && vs.count(p[b])) { share_vertex = true; break; }
                if (share_vertex)
                    pairs.insert({std::min(p[a], p[b]), std::max(p[a], p[b])});
            }
    }
    lat.nn_pairs.assign(pairs.begin(), pairs.end());
}

CodeLattice build_kitaev_square(int M, int D, Boundary boundary) {
    Builder b;
    CodeLattice& lat = b.lat;
    lat.family = CodeFamily::kitaev_square;
    lat.boundary = boundary;
    lat.M = M;
    lat.D = D;

    const bool torus = boundary == Boundary::torus;
    const int vrows = torus ? M : M - 1;  // rows of vertical edges
    lat.n_qubits = std::size_t(M) * D + std::size_t(vrows) * D;

    auto h = [&](int r, int c) { return std::size_t(r) * D + imod(c, D); };
    auto v = [&](int r, int c) { return std::size_t(M) * D + std::size_t(imod(r, torus ? M : vrows)) * D + imod(c, D); };

    // vertices (r,c)
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < D; ++c) {
            std::vector<std::size_t> s = {h(r, c - 1), h(r, c)};
            if (torus) {
                s.push_back(v(r - 1, c));
                s.push_back(v(r, c));
            } else {
                if (r > 0) s.push_back(v(r - 1, c));
                if (r < M - 1) s.push_back(v(r, c));
            }
            lat.vertices.push_back(std::move(s));
            lat.vertex_coords.emplace_back(r, c);
        }

    // plaquettes between rows r and r+1
    const int prow = torus ? M : M - 1;
    for (int r = 0; r < prow; ++r)
        for (int c = 0; c < D; ++c)
            b.add_plaquette({h(r, c), h(torus ? imod(r + 1, M) : r + 1, c), v(r, c), v(r, c + 1)},
                            -1, r, c);

    derive_nn_pairs(lat);

    // loops
    Loop lxv{"Lx_v", 'X', {}};
    for (int r = 0; r < M; ++r) lxv.qubits.push_back(h(r, 0));
    Loop lzh{"Lz_h", 'Z', {}};
    for (int c = 0; c < D; ++c) lzh.qubits.push_back(h(0, c));
    lat.loops = {lxv, lzh};
    if (torus) {
        Loop lxh{"Lx_h", 'X', {}};
        for (int c = 0; c < D; ++c) lxh.qubits.push_back(v(0, c));
        Loop lzv{"Lz_v", 'Z', {}};
        for (int r = 0; r < M; ++r) lzv.qubits.push_back(v(r, 0));
        lat.loops.push_back(lxh);
        lat.loops.push_back(lzv);
    }

    if (!torus) {
        for (int r = 0; r < M; ++r) lat.witness_s1_xstabs.push_back(std::size_t(r) * D + 0);
        for (int k = 0; k < M - 1; ++k)
            lat.witness_z_chain.push_back({std::size_t(k) * D + 0});
    }
    return lat;
}

CodeLattice build_kitaev_triangular(int M, int D, Boundary boundary) {
    Builder b;
    CodeLattice& lat = b.lat;
    lat.family = CodeFamily::kitaev_triangular;
    lat.boundary = boundary;
    lat.M = M;
    lat.D = D;

    const bool torus = boundary == Boundary::torus;
    const int drow = torus ? M : M - 1;  // rows of diagonal edges (indexed by upper row - 1)
    lat.n_qubits = std::size_t(M) * D + 2 * std::size_t(drow) * D;

    auto h = [&](int r, int c) { return std::size_t(imod(r, M)) * D + imod(c, D); };
    // dl(r,c): edge (r,c)-(r-1,c); dr(r,c): edge (r,c)-(r-1,c+1); r in [1,M) (cylinder)
    auto dl = [&](int r, int c) {
        return std::size_t(M) * D + std::size_t(torus ? imod(r, M) : r - 1) * D + imod(c, D);
    };
    auto dr = [&](int r, int c) {
        return std::size_t(M) * D + std::size_t(drow) * D + std::size_t(torus ? imod(r, M) : r - 1) * D + imod(c, D);
    };

    for (int r = 0; r < M; ++r)
        for (int c = 0; c < D; ++c) {
            std::vector<std::size_t> s = {h(r, c - 1), h(r, c)};
            if (torus || r > 0) {
                s.push_back(dl(r, c));      // (r,c)-(r-1,c)
                s.push_back(dr(r, c));      // (r,c)-(r-1,c+1)
            }
            if (torus || r < M - 1) {
                s.push_back(dl(r + 1, c));      // (r+1,c)-(r,c)
                s.push_back(dr(r + 1, c - 1));  // (r+1,c-1)-(r,c)
            }
            lat.vertices.push_back(std::move(s));
            lat.vertex_coords.emplace_back(r, c);
        }

    // up(r,c) spans vertices {(r,c),(r,c+1),(r+1,c)}, down(r,c) spans
    // {(r+1,c),(r+1,c+1),(r,c+1)}; plaquette list: all up rows, then all down.
    const int prow = torus ? M : M - 1;
    for (int r = 0; r < prow; ++r)
        for (int c = 0; c < D; ++c)
            b.add_plaquette({h(r, c), dl(r + 1, c), dr(r + 1, c)}, -1, r, c);
    for (int r = 0; r < prow; ++r)
        for (int c = 0; c < D; ++c)
            b.add_plaquette({h(torus ? imod(r + 1, M) : r + 1, c), dr(r + 1, c), dl(r + 1, c + 1)},
                            -1, r, c);

    derive_nn_pairs(lat);

    Loop lxv{"Lx_v", 'X', {}};
    for (int r = 0; r < M; ++r) {
        lxv.qubits.push_back(h(r, 0));
        if (torus || r < M - 1) lxv.qubits.push_back(dr(r + 1, 0));
    }
    Loop lzh{"Lz_h", 'Z', {}};
    for (int c = 0; c < D; ++c) lzh.qubits.push_back(h(0, c));
    lat.loops = {lxv, lzh};
    if (torus) {
        Loop lxh{"Lx_h", 'X', {}};
        for (int c = 0; c < D; ++c) {
            lxh.qubits.push_back(dl(1, c));
            lxh.qubits.push_back(dr(1, c));
        }
        Loop lzv{"Lz_v", 'Z', {}};
        for (int r = 1; r <= M; ++r) lzv.qubits.push_back(dl(r, 0));
        lat.loops.push_back(lxh);
        lat.loops.push_back(lzv);
    }

    if (!torus) {
        const std::size_t up0 = 0, down0 = std::size_t(prow) * D;
        for (int r = 0; r < M; ++r) lat.witness_s1_xstabs.push_back(std::size_t(r) * D + 0);
        for (int k = 0; k < 2 * M - 2; ++k) {
            if (k % 2 == 0)
                lat.witness_z_chain.push_back({up0 + std::size_t(k / 2) * D + 0});
            else
                lat.witness_z_chain.push_back({down0 + std::size_t(k / 2) * D + 0});
        }
    }
    return lat;
}

CodeLattice build_color_honeycomb(int M, int D) {
    Builder b;
    CodeLattice& lat = b.lat;
    lat.family = CodeFamily::color_honeycomb;
    lat.boundary = Boundary::cylinder;
    lat.M = M;
    lat.D = D;

    const int R = 2 * M - 1;  // qubit rows
    lat.n_qubits = std::size_t(R) * D;
    auto q = [&](int r, int c) { return std::size_t(r) * D + imod(c, D); };

    // Interior hexagons are anchored at (r,c) with (r+c) even and span rows
    // r..r+2, columns c,c+1.  Cut hexagons at the open rows keep 4 qubits.
    std::map<std::pair<int, int>, std::size_t> at;  // (anchor row, col) -> index
    for (int r = 0; r <= R - 3; ++r)
        for (int c = 0; c < D; ++c) {
            if ((r + c) % 2 != 0) continue;
            at[{r, c}] = b.add_plaquette(
                {q(r, c), q(r, c + 1), q(r + 1, c), q(r + 1, c + 1), q(r + 2, c), q(r + 2, c + 1)},
                imod(r, 3), r, c);
        }
    for (int c = 1; c < D; c += 2)  // top boundary, anchor row -1 (c odd)
        at[{-1, c}] = b.add_plaquette({q(0, c), q(0, c + 1), q(1, c), q(1, c + 1)}, 2, -1, c);
    for (int c = 0; c < D; ++c) {   // bottom boundary, anchor row R-2
        if ((R - 2 + c) % 2 != 0) continue;
        at[{R - 2, c}] = b.add_plaquette(
            {q(R - 2, c), q(R - 2, c + 1), q(R - 1, c), q(R - 1, c + 1)}, imod(R - 2, 3), R - 2, c);
    }

    // Vertical loop: column 0, skipping every row r = 2 (mod 3); horizontal
    // loops: the full top qubit row.
    Loop lxv{"Lx_v", 'X', {}}, lzv{"Lz_v", 'Z', {}};
    for (int r = 0; r < R; ++r)
        if (r % 3 != 2) {
            lxv.qubits.push_back(q(r, 0));
            lzv.qubits.push_back(q(r, 0));
        }
    Loop lxh{"Lx_h", 'X', {}}, lzh{"Lz_h", 'Z', {}};
    for (int c = 0; c < D; ++c) {
        lxh.qubits.push_back(q(0, c));
        lzh.qubits.push_back(q(0, c));
    }
    lat.loops = {lxv, lzh, lxh, lzv};

    if (M == 3) {
        lat.witness_s1_xstabs = {at.at({0, 0}), at.at({2, 0})};
        lat.witness_z_chain = {{at.at({-1, D - 1})}, {at.at({1, D - 1})}, {at.at({R - 2, D - 1})}};
    }
    return lat;
}

CodeLattice build_color_square_octagonal(int M, int D) {
    Builder b;
    CodeLattice& lat = b.lat;
    lat.family = CodeFamily::color_square_octagonal;
    lat.boundary = Boundary::cylinder;
    lat.M = M;
    lat.D = D;

    // Unified checkerboard: squares at (x,y) with x+y even, octagons at
    // x+y odd, x in [0,D) periodic, y in [0, 2M-1).  Each square carries 4
    // qubits; octagons in the top and bottom rows are cut to 6 qubits.
    const int Y = 2 * M - 1;
    const int sq_per_row = D / 2;
    lat.n_qubits = std::size_t(4) * sq_per_row * Y;

    enum Corner { NE = 0, NW = 1, SW = 2, SE = 3 };
    auto sq_exists = [&](int x, int y) { return y >= 0 && y < Y && (imod(x, D) + y) % 2 == 0; };
    auto qb = [&](int x, int y, int corner) {
        return 4 * (std::size_t(y) * sq_per_row + imod(x, D) / 2) + std::size_t(corner);
    };

    std::map<std::pair<int, int>, std::size_t> at;  // (x,y) -> plaquette index
    for (int y = 0; y < Y; ++y)
        for (int x = 0; x < D; ++x) {
            if ((x + y) % 2 != 0) continue;
            at[{x, y}] = b.add_plaquette(
                {qb(x, y, NE), qb(x, y, NW), qb(x, y, SW), qb(x, y, SE)}, 0, x, y);
        }
    for (int y = 0; y < Y; ++y)
        for (int x = 0; x < D; ++x) {
            if ((x + y) % 2 != 1) continue;
            std::vector<std::size_t> s;
            if (sq_exists(x, y - 1)) { s.push_back(qb(x, y - 1, NE)); s.push_back(qb(x, y - 1, NW)); }
            if (sq_exists(x, y + 1)) { s.push_back(qb(x, y + 1, SE)); s.push_back(qb(x, y + 1, SW)); }
            s.push_back(qb(x - 1, y, NE));
            s.push_back(qb(x - 1, y, SE));
            s.push_back(qb(x + 1, y, NW));
            s.push_back(qb(x + 1, y, SW));
            at[{x, y}] = b.add_plaquette(std::move(s), (y % 2 == 0) ? 1 : 2, x, y);
        }

    // Vertical loop through column x=0: the east side pairs of its squares.
    Loop lxv{"Lx_v", 'X', {}}, lzv{"Lz_v", 'Z', {}};
    for (int y = 0; y < Y; y += 2) {
        for (int corner : {SE, NE}) {
            lxv.qubits.push_back(qb(0, y, corner));
            lzv.qubits.push_back(qb(0, y, corner));
        }
    }
    // Horizontal loop along the bottom: south side pairs of the y=0 squares.
    Loop lxh{"Lx_h", 'X', {}}, lzh{"Lz_h", 'Z', {}};
    for (int x = 0; x < D; x += 2) {
        for (int corner : {SW, SE}) {
            lxh.qubits.push_back(qb(x, 0, corner));
            lzh.qubits.push_back(qb(x, 0, corner));
        }
    }
    lat.loops = {lxv, lzh, lxh, lzv};

    // S1: the loop squares, the octagons one column to the left of them, and
    // the odd-row squares between those octagons; everything off the loop
    // telescopes away except one translated copy of the loop.
    for (int y = 0; y < Y; y += 2) lat.witness_s1_xstabs.push_back(at.at({0, y}));
    for (int y = 0; y < Y; y += 2) lat.witness_s1_xstabs.push_back(at.at({imod(-1, D), y}));
    for (int y = 1; y < Y; y += 2) lat.witness_s1_xstabs.push_back(at.at({imod(-1, D), y}));
    for (int j = 0; j < 2 * M - 1; ++j) {  // n-1 chain links for n = 2M loop qubits
        if (j % 2 == 0)
            lat.witness_z_chain.push_back({at.at({0, j})});
        else
            lat.witness_z_chain.push_back({at.at({0, j}), at.at({imod(-1, D), j})});
    }
    return lat;
}

}  // namespace

CodeLattice build_kitaev(CodeFamily shape, int M, int D, Boundary boundary) {
    if (shape != CodeFamily::kitaev_square && shape != CodeFamily::kitaev_triangular)
        throw std::invalid_argument("build_kitaev: shape must be a Kitaev family");
    if (M < 2 || D < 3) throw std::invalid_argument("build_kitaev: need M >= 2, D >= 3");
    if (boundary == Boundary::torus && M < 3)
        throw std::invalid_argument("build_kitaev: torus mode needs M >= 3");
    return shape == CodeFamily::kitaev_square ? build_kitaev_square(M, D, boundary)
                                              : build_kitaev_triangular(M, D, boundary);
}

CodeLattice build_color(CodeFamily shape, int M, int D) {
    if (shape != CodeFamily::color_honeycomb && shape != CodeFamily::color_square_octagonal)
        throw std::invalid_argument("build_color: shape must be a color family");
    if (D < 4 || D % 2 != 0)
        throw std::invalid_argument("build_color: D must be even and >= 4");
    if (shape == CodeFamily::color_honeycomb) {
        if (M < 3 || M % 3 != 0)
            throw std::invalid_argument(
                "build_color: honeycomb needs M >= 3 with M % 3 == 0 "
                "(other heights have no stabilizer constraint and a unique ground state)");
        return build_color_honeycomb(M, D);
    }
    if (M < 2) throw std::invalid_argument("build_color: square-octagonal needs M >= 2");
    return build_color_square_octagonal(M, D);
}

std::vector<Loop> nontrivial_loops(const CodeLattice& lat) { return lat.loops; }

std::string CodeLattice::dump() const {
    std::ostringstream os;
    os << "family " << family_name(family) << "\n";
    os << "boundary " << (boundary == Boundary::torus ? "torus" : "cylinder") << "\n";
    os << "M " << M << "\nD " << D << "\nn_qubits " << n_qubits << "\n";
    os << "n_plaquettes " << plaquettes.size() << "\n";
    os << "n_vertices " << vertices.size() << "\n";
    for (std::size_t p = 0; p < plaquettes.size(); ++p) {
        os << "plaquette " << p << " anchor (" << plaquette_coords[p].first << ","
           << plaquette_coords[p].second << ")";
        if (!plaquette_color.empty() && plaquette_color[p] >= 0)
            os << " color " << plaquette_color[p];
        os << " qubits";
        for (auto q : plaquettes[p]) os << ' ' << q;
        os << "\n";
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        os << "vertex " << v << " coord (" << vertex_coords[v].first << ","
           << vertex_coords[v].second << ") qubits";
        for (auto q : vertices[v]) os << ' ' << q;
        os << "\n";
    }
    os << "n_nn_pairs " << nn_pairs.size() << "\n";
    for (auto& [a, b2] : nn_pairs) os << "nn_pair " << a << ' ' << b2 << "\n";
    for (const auto& l : loops) {
        os << "loop " << l.name << ' ' << l.pauli << " qubits";
        for (auto q : l.qubits) os << ' ' << q;
        os << "\n";
    }
    return os.str();
}

} // namespace tqc
