#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "tqc/gf2.hpp"
#include "tqc/lattice.hpp"

using namespace tqc;

namespace {

std::vector<std::uint64_t> xmask_words(const PauliString& p) {
    return p.x_words();
}

// number of plaquettes / vertices containing each qubit
std::vector<int> membership_counts(const std::vector<std::vector<std::size_t>>& sets,
                                   std::size_t n) {
    std::vector<int> cnt(n, 0);
    for (const auto& s : sets)
        for (auto q : s) cnt[q]++;
    return cnt;
}

void check_all_stabilizers_commute(const CodeLattice& lat) {
    auto zs = lat.z_stabilizers();
    auto xs = lat.x_stabilizers();
    for (std::size_t a = 0; a < zs.size(); ++a)
        for (std::size_t b = a + 1; b < zs.size(); ++b) REQUIRE(commutes(zs[a], zs[b]));
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b) REQUIRE(commutes(xs[a], xs[b]));
    for (const auto& z : zs)
        for (const auto& x : xs) REQUIRE(commutes(z, x));
}

void check_loops(const CodeLattice& lat) {
    auto zs = lat.z_stabilizers();
    auto xs = lat.x_stabilizers();
    for (const auto& l : lat.loops) {
        auto op = lat.loop_operator(l);
        for (const auto& s : zs) REQUIRE(commutes(op, s));
        for (const auto& s : xs) REQUIRE(commutes(op, s));
        // not a product of stabilizers: check membership in the span of the
        // same-type stabilizer supports over GF(2)
        const auto& stabs = l.pauli == 'X' ? xs : zs;
        std::vector<std::vector<std::uint64_t>> basis;
        for (const auto& s : stabs)
            basis.push_back(l.pauli == 'X' ? s.x_words() : s.z_words());
        auto target = l.pauli == 'X' ? op.x_words() : op.z_words();
        REQUIRE(!gf2_in_span(basis, target, lat.n_qubits));
    }
}

} // namespace

TEST_CASE("kitaev square cylinder counts and invariants") {
    for (int M : {2, 3}) {
        for (int D : {3, 4, 5, 8}) {
            auto lat = build_kitaev(CodeFamily::kitaev_square, M, D);
            CHECK(lat.n_qubits == std::size_t((2 * M - 1) * D));
            CHECK(lat.n_vertices() == std::size_t(M * D));
            CHECK(lat.n_plaquettes() == std::size_t((M - 1) * D));
            // every qubit in exactly two vertex supports
            for (int c : membership_counts(lat.vertices, lat.n_qubits)) CHECK(c == 2);
            check_all_stabilizers_commute(lat);
            check_loops(lat);
            CHECK(lat.ground_space_dimension() == 2);
        }
    }
}

TEST_CASE("kitaev square M=2 D=3 example") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    CHECK(lat.n_qubits == 9);
    CHECK(lat.n_vertices() == 6);
    CHECK(lat.n_plaquettes() == 3);
    // one vertex constraint: independent stabilizer count 8
    std::vector<std::vector<std::uint64_t>> rows;
    const std::size_t nb = 2 * lat.n_qubits;
    for (const auto& s : lat.z_stabilizers()) {
        std::vector<std::uint64_t> r(1, 0);
        for (std::size_t q = 0; q < lat.n_qubits; ++q)
            if (s.z_bit(q)) r[0] |= std::uint64_t(1) << (q + lat.n_qubits);
        rows.push_back(r);
    }
    for (const auto& s : lat.x_stabilizers()) {
        std::vector<std::uint64_t> r(1, 0);
        for (std::size_t q = 0; q < lat.n_qubits; ++q)
            if (s.x_bit(q)) r[0] |= std::uint64_t(1) << q;
        rows.push_back(r);
    }
    CHECK(gf2_rank(rows, nb) == 8);
    CHECK(lat.ground_space_dimension() == 2);
}

TEST_CASE("kitaev triangular cylinder") {
    for (int M : {2, 3}) {
        for (int D : {3, 5, 8}) {
            auto lat = build_kitaev(CodeFamily::kitaev_triangular, M, D);
            CHECK(lat.n_qubits == std::size_t((3 * M - 2) * D));
            for (int c : membership_counts(lat.vertices, lat.n_qubits)) CHECK(c == 2);
            // plaquettes are triangles
            for (const auto& p : lat.plaquettes) CHECK(p.size() == 3);
            // bulk vertices have 6 qubits, boundary 4
            for (std::size_t v = 0; v < lat.n_vertices(); ++v) {
                int r = lat.vertex_coords[v].first;
                CHECK(lat.vertices[v].size() == std::size_t((r == 0 || r == M - 1) ? 4 : 6));
            }
            check_all_stabilizers_commute(lat);
            check_loops(lat);
            CHECK(lat.ground_space_dimension() == 2);
        }
    }
}

TEST_CASE("kitaev torus") {
    for (auto fam : {CodeFamily::kitaev_square, CodeFamily::kitaev_triangular}) {
        auto lat = build_kitaev(fam, 3, 3, Boundary::torus);
        const int expected = fam == CodeFamily::kitaev_square ? 18 : 27;
        CHECK(int(lat.n_qubits) == expected);
        check_all_stabilizers_commute(lat);
        check_loops(lat);
        CHECK(lat.ground_space_dimension() == 4);
        CHECK(lat.loops.size() == 4);
    }
    CHECK_THROWS(build_kitaev(CodeFamily::kitaev_square, 2, 4, Boundary::torus));
}

TEST_CASE("color honeycomb") {
    for (int D : {4, 6, 8}) {
        auto lat = build_color(CodeFamily::color_honeycomb, 3, D);
        CHECK(lat.n_qubits == std::size_t(5 * D));
        auto counts = membership_counts(lat.plaquettes, lat.n_qubits);
        // boundary rows have 2 plaquettes per qubit, bulk rows 3
        for (std::size_t q = 0; q < lat.n_qubits; ++q) {
            const int row = int(q) / D;
            CHECK(counts[q] == ((row == 0 || row == 4) ? 2 : 3));
        }
        // every qubit's plaquettes carry three distinct colors in the bulk
        check_all_stabilizers_commute(lat);
        check_loops(lat);
        CHECK(lat.ground_space_dimension() == 4);
        CHECK(lat.loops.size() == 4);
        // plaquette sizes: interior 6, boundary 4
        for (std::size_t p = 0; p < lat.n_plaquettes(); ++p) {
            const int a = lat.plaquette_coords[p].first;
            CHECK(lat.plaquettes[p].size() == std::size_t((a == -1 || a == 3) ? 4 : 6));
        }
    }
    CHECK(build_color(CodeFamily::color_honeycomb, 3, 4).n_qubits == 20);
    CHECK_THROWS(build_color(CodeFamily::color_honeycomb, 3, 5));  // odd D
    CHECK_THROWS(build_color(CodeFamily::color_honeycomb, 4, 4));  // misaligned height
    CHECK_THROWS(build_color(CodeFamily::color_honeycomb, 2, 4));
}

TEST_CASE("color square octagonal") {
    for (int M : {2, 3}) {
        for (int D : {4, 6}) {
            auto lat = build_color(CodeFamily::color_square_octagonal, M, D);
            CHECK(lat.n_qubits == std::size_t(2 * D * (2 * M - 1)));
            auto counts = membership_counts(lat.plaquettes, lat.n_qubits);
            int boundary_qubits = 0;
            for (auto c : counts) {
                CHECK((c == 2 || c == 3));
                if (c == 2) boundary_qubits++;
            }
            CHECK(boundary_qubits == 2 * D);
            check_all_stabilizers_commute(lat);
            check_loops(lat);
            CHECK(lat.ground_space_dimension() == 4);
            // plaquette sizes: squares 4, bulk octagons 8, boundary octagons 6
            for (std::size_t p = 0; p < lat.n_plaquettes(); ++p) {
                auto [x, y] = lat.plaquette_coords[p];
                if ((x + y) % 2 == 0)
                    CHECK(lat.plaquettes[p].size() == 4);
                else
                    CHECK(lat.plaquettes[p].size() ==
                          std::size_t((y == 0 || y == 2 * M - 2) ? 6 : 8));
            }
        }
    }
    CHECK(build_color(CodeFamily::color_square_octagonal, 2, 4).n_qubits == 24);
}

TEST_CASE("nn pairs: square counts and perpendicularity") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 5);
    // M=2: every vertex is a boundary vertex with 2 perpendicular pairs
    CHECK(lat.nn_pairs.size() == std::size_t(2 * 2 * 5));
    auto lat3 = build_kitaev(CodeFamily::kitaev_square, 3, 5);
    // bulk vertices contribute 4 pairs, boundary vertices 2
    CHECK(lat3.nn_pairs.size() == std::size_t(4 * 5 + 2 * 2 * 5));
    // triangular: 3 pairs per triangle
    auto t = build_kitaev(CodeFamily::kitaev_triangular, 2, 5);
    CHECK(t.nn_pairs.size() == 3 * t.n_plaquettes());
}

TEST_CASE("lattice dump is stable") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    auto d = lat.dump();
    CHECK(d.find("family kitaev_square") != std::string::npos);
    CHECK(d.find("n_qubits 9") != std::string::npos);
    CHECK(d.find("loop Lx_v X") != std::string::npos);
}
