#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "tqc/exact_diag.hpp"
#include "tqc/hamiltonian.hpp"

using namespace tqc;

namespace {

// dense eigenvalues of a Pauli-sum Hamiltonian (oracle)
Eigen::VectorXd dense_eigs(const SparseHamiltonian& h) {
    Eigen::MatrixXcd m = dense_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    return es.eigenvalues();
}

SparseHamiltonian tfim_chain(int L, double j, double hfield) {
    SparseHamiltonian h;
    h.n_qubits = L;
    for (int i = 0; i < L; ++i)
        h.terms.push_back({-j, PauliString::z_string(L, {std::size_t(i), std::size_t((i + 1) % L)})});
    for (int i = 0; i < L; ++i)
        h.terms.push_back({-hfield, PauliString::single_x(L, std::size_t(i))});
    return h;
}

XorDiagMap full_space_map(const SparseHamiltonian& h) {
    SectorBasis basis(h.n_qubits, {});
    return sector_map(h, basis);
}

} // namespace

TEST_CASE("lanczos matches dense oracle on random pauli sums") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        const int n = 10;
        SparseHamiltonian h;
        h.n_qubits = n;
        for (int t = 0; t < 30; ++t) {
            std::vector<std::size_t> sup;
            for (int q = 0; q < n; ++q)
                if (rng.next() % 3 == 0) sup.push_back(q);
            if (sup.empty()) sup.push_back(rng.next() % n);
            const double c = 2.0 * rng.uniform() - 1.0;
            if (t % 2 == 0)
                h.terms.push_back({c, PauliString::z_string(n, sup)});
            else
                h.terms.push_back({c, PauliString::x_string(n, sup)});
        }
        auto ref = dense_eigs(h);
        LanczosOptions lo;
        lo.seed = 1000 + trial;
        auto sol = lanczos_lowest(full_space_map(h), 3, lo);
        for (int k = 0; k < 3; ++k) {
            CHECK(sol.eigenvalues[k] == doctest::Approx(ref(k)).epsilon(1e-9));
            CHECK(sol.residual_norms[k] < 1e-9);
        }
    }
}

TEST_CASE("tfim chain ground state matches dense oracle") {
    auto h = tfim_chain(8, 1.0, 1.0);
    auto ref = dense_eigs(h);
    auto sol = lanczos_lowest(full_space_map(h), 1, {});
    CHECK(sol.eigenvalues[0] == doctest::Approx(ref(0)).epsilon(1e-10));
}

TEST_CASE("unperturbed kitaev spectrum: degeneracy and plaquette gap") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    auto h = assemble(lat, 0.0, 0.0);
    auto ref = dense_eigs(h);
    CHECK(ref(0) == doctest::Approx(-9.0).epsilon(1e-12));
    CHECK(ref(1) == doctest::Approx(-9.0).epsilon(1e-12));
    CHECK(ref(2) - ref(0) == doctest::Approx(2.0).epsilon(1e-12));
    // term count: N_P + N_V + N + nn_pairs
    CHECK(h.terms.size() == 3 + 6 + 9 + lat.nn_pairs.size());
}

TEST_CASE("sector-reduced ground state agrees with dense full space") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    for (double g : {0.3, 0.5}) {
        auto h = assemble(lat, g, 0.1);
        auto ref = dense_eigs(h);
        // global ground state lives in the Z_P = +1 sector
        auto basis = make_sector_basis(lat, false);
        auto sol = lanczos_lowest(sector_map(h, *basis), 1, {});
        CHECK(sol.eigenvalues[0] == doctest::Approx(ref(0)).epsilon(1e-10));
    }
}

TEST_CASE("ground state satisfies the plaquette sector invariant") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    auto h = assemble(lat, 0.4, 0.2);
    Eigen::MatrixXcd m = dense_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXcd gs = es.eigenvectors().col(0);
    for (std::size_t p = 0; p < lat.n_plaquettes(); ++p) {
        auto zp = lat.z_plaquette(p);
        CHECK(expectation(gs, zp).real() == doctest::Approx(1.0).epsilon(1e-8));
    }
    // logical-sector conservation: [Lz_h, H] = 0 term by term
    auto lzh = lat.loop_operator(lat.loops[1]);
    for (const auto& t : h.terms) CHECK(commutes(lzh, t.op));
}

TEST_CASE("sector expectation matches dense oracle") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    const double g = 0.5;
    auto st = sector_ground_state(lat, g, 0.0, {});
    // dense oracle with sector-splitting penalty: shifts other sectors up
    // without touching in-sector states
    auto h = assemble(lat, g, 0.0);
    const double mu = 0.37;
    for (std::size_t p = 0; p < lat.n_plaquettes(); ++p)
        h.terms.push_back({-mu, lat.z_plaquette(p)});
    h.terms.push_back({-mu, lat.loop_operator(lat.loops[1])});
    Eigen::MatrixXcd m = dense_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXcd gs = es.eigenvectors().col(0);
    for (std::size_t i = 0; i < 3; ++i) {
        auto zi = PauliString::single_z(lat.n_qubits, i);
        CHECK(sector_expectation(st, zi) ==
              doctest::Approx(expectation(gs, zi).real()).epsilon(1e-9));
    }
    const double e_in_sector = es.eigenvalues()(0) + mu * (lat.n_plaquettes() + 1);
    CHECK(st.energy == doctest::Approx(e_in_sector).epsilon(1e-9));
}

TEST_CASE("fidelity basics") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    CHECK(fidelity(lat, Axis::field, 0.3, 0.3, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    // dense-oracle overlap via the penalty trick at g=0 and g=0.01
    auto gs_at = [&](double g) {
        auto h = assemble(lat, g, 0.0);
        const double mu = 0.37;
        for (std::size_t p = 0; p < lat.n_plaquettes(); ++p)
            h.terms.push_back({-mu, lat.z_plaquette(p)});
        h.terms.push_back({-mu, lat.loop_operator(lat.loops[1])});
        Eigen::MatrixXcd m = dense_matrix(h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        return Eigen::VectorXcd(es.eigenvectors().col(0));
    };
    const double f_dense = std::abs(gs_at(0.0).dot(gs_at(0.01)));
    CHECK(fidelity(lat, Axis::field, 0.0, 0.01, 0.0) ==
          doctest::Approx(f_dense).epsilon(1e-9));
}

TEST_CASE("fidelity susceptibility against the two-level closed form") {
    // H(p) = -sigma^z - p sigma^x: ground state angle alpha(p) = atan(p),
    // f = cos((alpha1-alpha2)/2), chi = -2 log f / delta^2
    auto alpha = [](double p) { return std::atan(p); };
    const double p = 0.7, d = 1e-3;
    const double f = std::cos((alpha(p + d / 2) - alpha(p - d / 2)) / 2);
    const double chi_exact = -2.0 * std::log(f) / (d * d);

    SparseHamiltonian h1, h2;
    h1.n_qubits = h2.n_qubits = 1;
    h1.terms.push_back({-1.0, PauliString::single_z(1, 0)});
    h1.terms.push_back({-(p - d / 2), PauliString::single_x(1, 0)});
    h2.terms.push_back({-1.0, PauliString::single_z(1, 0)});
    h2.terms.push_back({-(p + d / 2), PauliString::single_x(1, 0)});
    auto s1 = lanczos_lowest(full_space_map(h1), 1, {});
    auto s2 = lanczos_lowest(full_space_map(h2), 1, {});
    double ov = 0;
    for (int i = 0; i < 2; ++i) ov += s1.eigenvectors[0][i] * s2.eigenvectors[0][i];
    const double chi = -2.0 * std::log(std::abs(ov)) / (d * d);
    CHECK(chi == doctest::Approx(chi_exact).epsilon(1e-6));
}

TEST_CASE("fs sweep: non-negative, stable under delta halving") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    EdOptions opt;
    auto sweep = fs_sweep(lat, Axis::field, {0.2, 0.35, 0.5, 0.65, 0.8}, 0.0, opt);
    for (const auto& pt : sweep) CHECK(pt.value >= 0.0);
    EdOptions opt2 = opt;
    opt2.fs_delta = opt.fs_delta / 2;
    // away from the peak, chi is stable under halving delta
    const double chi_a = fs_sweep(lat, Axis::field, {0.2}, 0.0, opt)[0].value;
    const double chi_b = fs_sweep(lat, Axis::field, {0.2}, 0.0, opt2)[0].value;
    CHECK(std::abs(chi_a - chi_b) / chi_a < 1e-3);
}

TEST_CASE("energy gap: degenerate pair at zero perturbation, odd-D closure") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 3);
    auto gaps = energy_gap(lat, Axis::ising, {0.0, 0.3, 0.494, 0.8, 1.5}, 0.0, {});
    for (const auto& pt : gaps) CHECK(pt.value < 1e-8);  // odd D: closed for all lambda
    // even D: gap stays open
    auto lat4 = build_kitaev(CodeFamily::kitaev_square, 2, 4);
    auto gaps4 = energy_gap(lat4, Axis::ising, {0.3, 0.494, 0.8}, 0.0, {});
    for (const auto& pt : gaps4) CHECK(pt.value > 1e-6);
}
