#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "tqc/hamiltonian.hpp"
#include "tqc/qmc.hpp"

using namespace tqc;

namespace {

EffectiveModel chain_model(int L, double j, bool periodic = true) {
    EffectiveModel m;
    m.n_spins = L;
    m.g = j;  // couplings valued n_g * g
    m.lambda = 0;
    m.M = 1;
    m.D = L;
    m.family = CodeFamily::kitaev_square;
    for (int i = 0; i + (periodic ? 0 : 1) < L; ++i) {
        EffCoupling c;
        c.spins = {i, (i + 1) % L};
        std::sort(c.spins.begin(), c.spins.end());
        c.n_g = 1;
        m.couplings.push_back(c);
    }
    return m;
}

// thermal expectations of diagonal-in-z observables for a TFIM chain
struct ThermalOracle {
    double abs_m, m2, m4, sx, zz01;
};

ThermalOracle ed_thermal(const EffectiveModel& m, double beta) {
    const int n = int(m.n_spins);
    SparseHamiltonian h;
    h.n_qubits = n;
    for (const auto& c : m.couplings) {
        std::vector<std::size_t> sup(c.spins.begin(), c.spins.end());
        h.terms.push_back({-m.coupling_value(c), PauliString::z_string(n, sup)});
    }
    for (int i = 0; i < n; ++i) h.terms.push_back({-1.0, PauliString::single_x(n, i)});
    Eigen::MatrixXcd hm = dense_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hm);
    const Eigen::VectorXd ev = es.eigenvalues();
    const Eigen::MatrixXcd u = es.eigenvectors();
    Eigen::VectorXd boltz(ev.size());
    for (int k = 0; k < ev.size(); ++k) boltz(k) = std::exp(-beta * (ev(k) - ev(0)));
    const double z = boltz.sum();
    ThermalOracle out{0, 0, 0, 0, 0};
    const std::size_t dim = std::size_t(1) << n;
    // diagonal observables
    for (int k = 0; k < ev.size(); ++k) {
        double am = 0, m2 = 0, m4 = 0, zz = 0;
        for (std::size_t s = 0; s < dim; ++s) {
            const double w = std::norm(u(s, k));
            const int up = __builtin_popcountll(s);
            const double mag = (2.0 * up - n) / n;
            am += w * std::abs(mag);
            m2 += w * mag * mag;
            m4 += w * mag * mag * mag * mag;
            const int z0 = (s & 1) ? -1 : 1;
            const int z1 = (s & 2) ? -1 : 1;
            zz += w * z0 * z1;
        }
        out.abs_m += boltz(k) * am;
        out.m2 += boltz(k) * m2;
        out.m4 += boltz(k) * m4;
        out.zz01 += boltz(k) * zz;
    }
    out.abs_m /= z;
    out.m2 /= z;
    out.m4 /= z;
    out.zz01 /= z;
    // <sigma^x_0> via eigenbasis
    Eigen::MatrixXcd sx0 = dense_matrix(PauliString::single_x(n, 0));
    Eigen::MatrixXcd sx_eig = u.adjoint() * sx0 * u;
    double sx = 0;
    for (int k = 0; k < ev.size(); ++k) sx += boltz(k) * sx_eig(k, k).real();
    out.sx = sx / z;
    return out;
}

} // namespace

TEST_CASE("single spin in a pure transverse field") {
    EffectiveModel m = chain_model(1, 0.0);
    m.couplings.clear();
    QmcConfig cfg;
    cfg.beta = 4.0;
    cfg.therm_sweeps = 500;
    cfg.meas_sweeps = 4000;
    cfg.seed = 11;
    cfg.allow_disconnected = true;
    auto est = qmc_run(m, cfg);
    // |m| of a single spin is identically 1
    CHECK(est.mean_abs_m == doctest::Approx(1.0).epsilon(1e-12));
    // kink density estimator of <sigma^x> vs the 2x2 thermal value tanh(beta)
    CHECK(std::abs(est.mean_sx - std::tanh(cfg.beta)) < 0.02);
}

TEST_CASE("two-spin detailed balance smoke test") {
    EffectiveModel m = chain_model(2, 0.7, /*periodic=*/false);
    QmcConfig cfg;
    cfg.beta = 2.0;
    cfg.therm_sweeps = 1000;
    cfg.meas_sweeps = 20000;
    cfg.seed = 5;
    auto est = qmc_run(m, cfg);
    auto oracle = ed_thermal(m, cfg.beta);
    // z z correlator from slice moments: m^2 = (2 + 2 <z0 z1>)/4
    const double zz_est = 2.0 * est.m2 - 1.0;
    const double zz_err = 2.0 * est.stderr_m2;
    CHECK(std::abs(zz_est - oracle.zz01) < 3.5 * std::max(zz_err, 1e-4));
    CHECK(std::abs(est.mean_abs_m - oracle.abs_m) < 3.5 * std::max(est.stderr_abs_m, 1e-4));
    CHECK(std::abs(est.mean_sx - oracle.sx) < 0.02);
}

TEST_CASE("tfim chain L=8 against exact thermal values") {
    EffectiveModel m = chain_model(8, 1.0);
    QmcConfig cfg;
    cfg.beta = 32.0;
    cfg.therm_sweeps = 1500;
    cfg.meas_sweeps = 12000;
    cfg.seed = 23;
    auto est = qmc_run(m, cfg);
    auto oracle = ed_thermal(m, cfg.beta);
    CHECK(std::abs(est.mean_abs_m - oracle.abs_m) < 3.0 * std::max(est.stderr_abs_m, 5e-4));
    CHECK(std::abs(est.m2 - oracle.m2) < 3.0 * std::max(est.stderr_m2, 5e-4));
    CHECK(std::abs(est.m4 - oracle.m4) < 3.0 * std::max(est.stderr_m4, 5e-4));
    // signed magnetization vanishes by symmetry
    CHECK(std::abs(est.mean_m) < 3.5 * std::max(est.stderr_m, 5e-4));
}

TEST_CASE("seed determinism is bitwise") {
    EffectiveModel m = chain_model(6, 0.8);
    QmcConfig cfg;
    cfg.beta = 8.0;
    cfg.therm_sweeps = 200;
    cfg.meas_sweeps = 2000;
    cfg.seed = 99;
    auto a = qmc_run(m, cfg);
    auto b = qmc_run(m, cfg);
    CHECK(a.mean_abs_m == b.mean_abs_m);
    CHECK(a.binder == b.binder);
    CHECK(a.mean_sx == b.mean_sx);
    QmcConfig cfg2 = cfg;
    cfg2.seed = 100;
    auto c = qmc_run(m, cfg2);
    CHECK(a.mean_abs_m != c.mean_abs_m);
}

TEST_CASE("zero couplings: independent spin oracle") {
    const int L = 6;
    EffectiveModel m = chain_model(L, 0.0);
    QmcConfig cfg;
    cfg.beta = 6.0;
    cfg.therm_sweeps = 500;
    cfg.meas_sweeps = 8000;
    cfg.seed = 3;
    cfg.allow_disconnected = true;
    auto est = qmc_run(m, cfg);
    // each spin is +-1 with probability 1/2: <|m|> from the binomial law
    double exact = 0;
    for (int k = 0; k <= L; ++k) {
        double binom = std::tgamma(L + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(L - k + 1.0));
        exact += binom * std::pow(0.5, L) * std::abs(2.0 * k - L) / L;
    }
    CHECK(std::abs(est.mean_abs_m - exact) < 3.5 * std::max(est.stderr_abs_m, 5e-4));
}

TEST_CASE("error bars shrink like one over root samples") {
    EffectiveModel m = chain_model(8, 1.0);
    QmcConfig small;
    small.beta = 16.0;
    small.therm_sweeps = 500;
    small.meas_sweeps = 3000;
    small.seed = 17;
    QmcConfig big = small;
    big.meas_sweeps = 4 * small.meas_sweeps;
    auto a = qmc_run(m, small);
    auto b = qmc_run(m, big);
    const double ratio = a.stderr_abs_m / b.stderr_abs_m;  // expect about 2
    CHECK(ratio > 1.0);
    CHECK(ratio < 4.0);
}

TEST_CASE("model validation") {
    // antiferromagnetic coupling rejected
    EffectiveModel af = chain_model(4, 1.0);
    af.couplings[0].n_g = -1;
    CHECK_THROWS_WITH_AS(qmc_run(af, {}), doctest::Contains("antiferromagnetic"),
                         std::invalid_argument);
    // three-body terms rejected
    EffectiveModel bw = chain_model(4, 1.0);
    bw.couplings[0].spins = {0, 1, 2};
    CHECK_THROWS_WITH_AS(qmc_run(bw, {}), doctest::Contains("two-body"), std::invalid_argument);
    // decoupled chains declined without the override
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 4);  // even D
    EffectiveModel dec = map_model(lat, 0.0, 0.5);
    CHECK_THROWS_WITH_AS(qmc_run(dec, {}), doctest::Contains("disconnected"),
                         std::invalid_argument);
    QmcConfig force;
    force.allow_disconnected = true;
    force.therm_sweeps = 50;
    force.meas_sweeps = 500;
    CHECK_NOTHROW(qmc_run(dec, force));
}

TEST_CASE("default beta tracks the growing direction") {
    auto wide = map_model(build_kitaev(CodeFamily::kitaev_square, 2, 41), 0.5, 0.0);
    CHECK(default_beta(wide) == doctest::Approx(82.0));
    auto narrow = map_model(build_kitaev(CodeFamily::kitaev_square, 40, 3), 0.5, 0.0);
    CHECK(default_beta(narrow) == doctest::Approx(80.0));
    auto small = map_model(build_kitaev(CodeFamily::kitaev_square, 2, 5), 0.5, 0.0);
    CHECK(default_beta(small) == doctest::Approx(64.0));
}

TEST_CASE("qmc sweep records failures and continues") {
    auto lat = build_kitaev(CodeFamily::kitaev_square, 2, 4);  // even D decouples at g=0
    QmcConfig cfg;
    cfg.beta = 8.0;
    cfg.therm_sweeps = 100;
    cfg.meas_sweeps = 600;
    cfg.seed = 1;
    auto pts = qmc_sweep(lat, Axis::ising, {0.2, 0.4}, 0.0, cfg);
    CHECK(pts.size() == 2);
    for (const auto& p : pts) CHECK(p.failed);  // decoupled, declined by default
    auto ok = qmc_sweep(lat, Axis::field, {0.2, 0.4}, 0.0, cfg);
    for (const auto& p : ok) CHECK(!p.failed);
}
