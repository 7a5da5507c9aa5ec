#include "tqc/witness.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "tqc/gf2.hpp"

namespace tqc {

WitnessSet construct_witness_set(const CodeLattice& lat, const Loop& loop) {
    if (loop.pauli != 'X' || loop.name != "Lx_v")
        throw std::invalid_argument("construct_witness_set: only the vertical x-type loop is supported");
    if (lat.witness_s1_xstabs.empty() || lat.witness_z_chain.empty())
        throw std::invalid_argument(
            "construct_witness_set: no canonical construction for this lattice "
            "(torus mode, or an unsupported height)");

    WitnessSet ws;
    ws.omega = loop.qubits;
    const std::size_t n = ws.omega.size();

    PauliString s1 = PauliString::identity(lat.n_qubits);
    for (auto v : lat.witness_s1_xstabs) s1 = multiply(s1, lat.x_vertex(v));
    ws.stabilizers.push_back(s1);
    // S_alpha = T_1 T_2 ... T_{alpha-1}: cumulative products of the chain
    // plaquette sets, each T_k restricting to Z_{q_k} Z_{q_k+1}.
    PauliString acc = PauliString::identity(lat.n_qubits);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (auto p : lat.witness_z_chain.at(k)) acc = multiply(acc, lat.z_plaquette(p));
        ws.stabilizers.push_back(acc);
    }
    for (const auto& s : ws.stabilizers) ws.reduced.push_back(restrict_to(s, ws.omega));

    // canonical reduced forms
    if (!ws.reduced[0].equals(PauliString::x_string(n, [&] {
            std::vector<std::size_t> all(n);
            for (std::size_t i = 0; i < n; ++i) all[i] = i;
            return all;
        }())))
        throw std::runtime_error("construct_witness_set: S_1 does not reduce to XX...X");
    for (std::size_t a = 1; a < n; ++a)
        if (!ws.reduced[a].equals(PauliString::z_string(n, {0, a})))
            throw std::runtime_error("construct_witness_set: S_alpha does not reduce to Z_1 Z_alpha");

    ws.s1_effective_spins = map_operator(lat, s1);
    return ws;
}

namespace {

// symplectic independence over GF(2)
bool independent(const std::vector<PauliString>& ops) {
    if (ops.empty()) return true;
    const std::size_t n = ops[0].n_qubits();
    std::vector<std::vector<std::uint64_t>> rows;
    const std::size_t nw = (2 * n + 63) / 64;
    for (const auto& p : ops) {
        std::vector<std::uint64_t> r(nw, 0);
        for (std::size_t q = 0; q < n; ++q) {
            if (p.x_bit(q)) r[q >> 6] |= std::uint64_t(1) << (q & 63);
            if (p.z_bit(q)) r[(q + n) >> 6] |= std::uint64_t(1) << ((q + n) & 63);
        }
        rows.push_back(std::move(r));
    }
    return gf2_rank(rows, 2 * n) == ops.size();
}

bool single_qubit_anticommute(const PauliString& a, const PauliString& b, std::size_t q) {
    const int ax = a.x_bit(q), az = a.z_bit(q), bx = b.x_bit(q), bz = b.z_bit(q);
    return ((ax & bz) ^ (az & bx)) != 0;
}

} // namespace

ConditionReport verify_conditions(const WitnessSet& ws) {
    ConditionReport rep;
    const std::size_t n = ws.stabilizers.size();
    const std::size_t nq = ws.stabilizers[0].n_qubits();

    rep.independent_commuting = independent(ws.stabilizers);
    for (std::size_t a = 0; a < n && rep.independent_commuting; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!commutes(ws.stabilizers[a], ws.stabilizers[b])) rep.independent_commuting = false;

    rep.reduced_ok = independent(ws.reduced);
    for (std::size_t a = 0; a < n && rep.reduced_ok; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!commutes(ws.reduced[a], ws.reduced[b])) rep.reduced_ok = false;

    std::set<std::size_t> omega(ws.omega.begin(), ws.omega.end());
    rep.outside_commuting = true;
    for (std::size_t q = 0; q < nq && rep.outside_commuting; ++q) {
        if (omega.count(q)) continue;
        for (std::size_t a = 0; a < n && rep.outside_commuting; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (single_qubit_anticommute(ws.stabilizers[a], ws.stabilizers[b], q)) {
                    rep.outside_commuting = false;
                    break;
                }
    }

    // pseudoincidence matrix over the reduced single-qubit components; the
    // first n-1 columns are the pairings with S_1
    const std::size_t ncols = n * (n - 1) / 2;
    rep.pseudoincidence = Eigen::MatrixXi::Zero(int(n), int(ncols));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t b = 1; b < n; ++b) pairs.push_back({0, b});
    for (std::size_t a = 1; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) pairs.push_back({a, b});
    for (std::size_t j = 0; j < pairs.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            rep.pseudoincidence(int(i), int(j)) =
                single_qubit_anticommute(ws.reduced[pairs[j].first], ws.reduced[pairs[j].second], i) ? 1 : 0;

    std::vector<std::vector<std::uint64_t>> rows(n, std::vector<std::uint64_t>((ncols + 63) / 64, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < ncols; ++j)
            if (rep.pseudoincidence(int(i), int(j)))
                rows[i][j >> 6] |= std::uint64_t(1) << (j & 63);
    rep.pseudo_rank = gf2_rank(rows, ncols);
    rep.rank_ok = rep.pseudo_rank == n - 1;
    return rep;
}

bool ghz_check(const WitnessSet& ws) {
    const std::size_t n = ws.omega.size();
    if (n > 10) throw std::invalid_argument("ghz_check: n too large for the dense check");
    const std::size_t dim = std::size_t(1) << n;
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& r : ws.reduced) {
        Eigen::MatrixXcd s = dense_matrix(r);
        proj = proj * (Eigen::MatrixXcd::Identity(dim, dim) + s) / 2.0;
    }
    Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(dim);
    ghz(0) = 1.0 / std::sqrt(2.0);
    ghz(dim - 1) = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd target = ghz * ghz.adjoint();
    return (proj - target).norm() < 1e-10;
}

double witness_expectation_general(const Eigen::VectorXcd& state, const WitnessSet& ws) {
    const std::size_t n = ws.stabilizers.size();
    if (n > 16) throw std::invalid_argument("witness_expectation_general: n capped at 16");
    // W = 1/2 - prod (1+S_alpha)/2 ; expand over subsets
    double acc = 0;
    for (std::uint64_t sub = 0; sub < (std::uint64_t(1) << n); ++sub) {
        PauliString prod = PauliString::identity(ws.stabilizers[0].n_qubits());
        for (std::size_t a = 0; a < n; ++a)
            if ((sub >> a) & 1) prod = multiply(prod, ws.stabilizers[a]);
        acc += expectation(state, prod).real();
    }
    return 0.5 - acc / double(std::uint64_t(1) << n);
}

double lower_bound_gm(double w) {
    if (w > 0.5 || w < -0.5) throw std::domain_error("lower_bound_gm: w outside [-1/2, 1/2]");
    if (w >= 0) return 0.0;
    return (1.0 - std::sqrt(1.0 - 4.0 * w * w)) / 2.0;
}

double lower_bound_negativity(double w) {
    if (w > 0.5 || w < -0.5) throw std::domain_error("lower_bound_negativity: w outside [-1/2, 1/2]");
    if (w >= 0) return 0.0;
    return -2.0 * w;
}

std::vector<SweepPoint> witness_derivative(const std::vector<SweepPoint>& w) {
    if (w.size() < 2) throw std::invalid_argument("witness_derivative: need at least two points");
    std::vector<SweepPoint> d(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::size_t lo = i == 0 ? 0 : i - 1;
        std::size_t hi = i + 1 == w.size() ? i : i + 1;
        d[i].p = w[i].p;
        d[i].value = (w[hi].value - w[lo].value) / (w[hi].p - w[lo].p);
        d[i].residual = std::max(w[hi].residual, w[lo].residual);
    }
    return d;
}

std::vector<SweepPoint> witness_sweep(const CodeLattice& lat, Axis axis,
                                      const std::vector<double>& grid, double fixed_other,
                                      WitnessMethod method, const EdOptions& opt) {
    WitnessSet ws = construct_witness_set(lat, lat.loops.at(0));
    std::vector<SweepPoint> out;
    std::vector<double> warm;
    auto basis = method == WitnessMethod::full_ed ? make_sector_basis(lat, true) : nullptr;
    for (double p : grid) {
        auto [g, l] = axis_params(axis, p, fixed_other);
        if (method == WitnessMethod::map_ed) {
            EffectiveModel em = map_model(lat, g, l);
            EffGroundState es =
                effective_ground_state(em, opt, warm.empty() ? nullptr : &warm);
            const double s1 = effective_x_expectation(es, ws.s1_effective_spins);
            out.push_back({p, witness_expectation_fast(s1), es.residual});
            warm = std::move(es.vec);
        } else {
            SectorState st = sector_ground_state(lat, g, l, opt, basis,
                                                 warm.empty() ? nullptr : &warm);
            const double s1 = sector_expectation(st, ws.stabilizers[0]);
            out.push_back({p, witness_expectation_fast(s1), st.residual});
            warm = std::move(st.vec);
        }
    }
    return out;
}

} // namespace tqc
