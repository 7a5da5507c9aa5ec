#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "tqc/effective.hpp"

using namespace tqc;

namespace {

using SpinSet = std::vector<int>;
std::map<SpinSet, std::pair<long, long>> coupling_map(const EffectiveModel& m) {
    std::map<SpinSet, std::pair<long, long>> out;
    for (const auto& c : m.couplings) out[c.spins] = {c.n_g, c.n_lambda};
    return out;
}

int col_dist(int c1, int c2, int d) {
    int x = std::abs(c1 - c2) % d;
    return std::min(x, d - x);
}

} // namespace

TEST_CASE("square lattice couplings equal the closed form exactly") {
    for (int D : {3, 5}) {
        auto lat = build_kitaev(CodeFamily::kitaev_square, 2, D);
        auto m = map_model(lat, 0.3, 0.2);
        CHECK(m.n_spins == std::size_t(2 * D));
        CHECK(m.offset == doctest::Approx(-double(D)));
        // expected: (1,0) on NN vertex pairs, (0,2) on NNN diagonal pairs
        std::map<SpinSet, std::pair<long, long>> expect;
        auto vid = [&](int r, int c) { return r * D + ((c % D) + D) % D; };
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < D; ++c) {
                SpinSet rail{vid(r, c), vid(r, c + 1)};
                std::sort(rail.begin(), rail.end());
                expect[rail] = {1, 0};
            }
        for (int c = 0; c < D; ++c) {
            SpinSet rung{vid(0, c), vid(1, c)};
            std::sort(rung.begin(), rung.end());
            expect[rung] = {1, 0};
            for (int dc : {-1, 1}) {
                SpinSet diag{vid(0, c), vid(1, c + dc)};
                std::sort(diag.begin(), diag.end());
                expect[diag] = {0, 2};
            }
        }
        CHECK(coupling_map(m) == expect);
        // locality: every coupling is NN or NNN on the vertex lattice
        for (const auto& c : m.couplings) {
            auto [r1, c1] = lat.vertex_coords[c.spins[0]];
            auto [r2, c2] = lat.vertex_coords[c.spins[1]];
            CHECK(std::abs(r1 - r2) + col_dist(c1, c2, D) <= 2);
        }
    }
}

TEST_CASE("triangular lattice couplings: bulk g+2l, boundary g+l") {
    for (int M : {2, 3}) {
        auto lat = build_kitaev(CodeFamily::kitaev_triangular, M, 5);
        auto m = map_model(lat, 0.1, 0.1);
        auto cm = coupling_map(m);
        for (const auto& [spins, nn] : cm) {
            auto [r1, c1] = lat.vertex_coords[spins[0]];
            auto [r2, c2] = lat.vertex_coords[spins[1]];
            CHECK(nn.first == 1);  // one lattice edge per NN pair
            if (r1 == r2 && (r1 == 0 || r1 == M - 1))
                CHECK(nn.second == 1);  // boundary rail
            else
                CHECK(nn.second == 2);  // bulk
        }
        // example values at g = lambda = 0.1
        for (const auto& c : m.couplings) {
            const double v = m.coupling_value(c);
            CHECK((v == doctest::Approx(0.3) || v == doctest::Approx(0.2)));
        }
    }
}

TEST_CASE("color code couplings: three-body bulk, two-body boundary, strength g") {
    auto hc = build_color(CodeFamily::color_honeycomb, 3, 4);
    auto m = map_model(hc, 0.4, 0.0);
    CHECK(m.n_spins == hc.n_plaquettes());
    std::size_t triples = 0, pairs = 0;
    for (const auto& c : m.couplings) {
        CHECK(c.n_g >= 1);
        CHECK(c.n_lambda == 0);
        if (c.spins.size() == 3) ++triples;
        else if (c.spins.size() == 2) ++pairs;
        else CHECK(false);
    }
    CHECK(triples > 0);
    CHECK(pairs > 0);
    CHECK(!m.two_body_only());

    auto so = build_color(CodeFamily::color_square_octagonal, 2, 4);
    auto m2 = map_model(so, 0.4, 0.0);
    std::size_t t2 = 0, p2 = 0;
    for (const auto& c : m2.couplings) (c.spins.size() == 3 ? t2 : p2)++;
    CHECK(t2 > 0);
    CHECK(p2 > 0);
    CHECK_THROWS(map_model(so, 0.4, 0.1));  // no Ising term for color codes
}

TEST_CASE("map_operator") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    CHECK(map_operator(lat, PauliString::identity(lat.n_qubits)).empty());
    auto xv = lat.x_vertex(2);
    auto img = map_operator(lat, xv);
    CHECK(img == std::vector<int>{2});
    // S1 on the square ladder: the two vertices of column 0
    PauliString s1 = multiply(lat.x_vertex(0), lat.x_vertex(3));
    CHECK(map_operator(lat, s1) == std::vector<int>{0, 3});
    // something outside the group
    CHECK_THROWS(map_operator(lat, PauliString::single_x(lat.n_qubits, 0)));
}

TEST_CASE("spectrum check: full vs effective ground energy and witness") {
    for (double g : {0.4}) {
        for (double l : {0.0, 0.2}) {
            for (auto fam : {CodeFamily::kitaev_square, CodeFamily::kitaev_triangular}) {
                auto lat = build_kitaev(fam, 2, 3);
                auto rep = spectrum_check(lat, g, l);
                CHECK(rep.energy_ok);
                CHECK(rep.witness_ok);
            }
        }
    }
    // color honeycomb, field only
    auto hc = build_color(CodeFamily::color_honeycomb, 3, 4);
    auto rep = spectrum_check(hc, 0.3, 0.0);
    CHECK(rep.energy_ok);
    CHECK(rep.witness_ok);
}

TEST_CASE("decoupled transverse-field limit") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 4);
    auto m = map_model(lat, 0.0, 0.0);
    auto gs = effective_ground_state(m);
    // E0(H~) = -N_V with the -N_P offset folded in
    CHECK(gs.energy == doctest::Approx(-double(lat.n_vertices() + lat.n_plaquettes())));
}

TEST_CASE("effective abs m on the small ladder") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    // strong coupling: |m| near 1; weak: near the independent-spin value
    auto strong = effective_ground_state(map_model(lat, 3.0, 0.0));
    CHECK(effective_abs_m(strong) > 0.9);
    auto weak = effective_ground_state(map_model(lat, 0.01, 0.0));
    CHECK(effective_abs_m(weak) < 0.4);
}
