#include "tqc/effective.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tqc {

std::size_t EffectiveModel::max_body() const {
    std::size_t m = 0;
    for (const auto& c : couplings) m = std::max(m, c.spins.size());
    return m;
}

std::string EffectiveModel::dump() const {
    std::ostringstream os;
    os << "family " << family_name(family) << "\nM " << M << "\nD " << D << "\n";
    os << "n_spins " << n_spins << "\ng " << g << "\nlambda " << lambda << "\n";
    os << "offset " << offset << "\n";
    os << "transverse -1 per spin\n";
    for (const auto& c : couplings) {
        os << "coupling";
        for (int s : c.spins) os << ' ' << s;
        os << " : " << c.n_g << "*g + " << c.n_lambda << "*lambda = " << coupling_value(c) << "\n";
    }
    return os.str();
}

EffectiveModel map_model(const CodeLattice& lat, double g, double lambda) {
    if (lat.is_color() && lambda != 0.0)
        throw std::invalid_argument("map_model: color code takes a field perturbation only");

    EffectiveModel m;
    m.family = lat.family;
    m.boundary = lat.boundary;
    m.M = lat.M;
    m.D = lat.D;
    m.g = g;
    m.lambda = lambda;
    m.offset = -double(lat.n_plaquettes());
    const auto& xsets = lat.is_color() ? lat.plaquettes : lat.vertices;
    m.n_spins = xsets.size();
    m.spin_coords = lat.is_color() ? lat.plaquette_coords : lat.vertex_coords;

    // qubit -> x-stabilizers containing it
    std::vector<std::vector<int>> member(lat.n_qubits);
    for (std::size_t v = 0; v < xsets.size(); ++v)
        for (auto q : xsets[v]) member[q].push_back(int(v));

    std::map<std::vector<int>, EffCoupling> acc;
    auto accumulate = [&](std::vector<int> spins, long ng, long nl) {
        std::sort(spins.begin(), spins.end());
        if (spins.size() < 2)
            throw std::runtime_error("map_model: perturbation term anticommutes with fewer than "
                                     "two effective-spin generators");
        auto& c = acc[spins];
        c.spins = spins;
        c.n_g += ng;
        c.n_lambda += nl;
    };

    // field term on qubit i: flips the x-stabilizers containing i
    for (std::size_t i = 0; i < lat.n_qubits; ++i) accumulate(member[i], 1, 0);
    // Ising term on an NN pair: flips the symmetric difference
    for (const auto& [i, j] : lat.nn_pairs) {
        std::vector<int> sym;
        std::set_symmetric_difference(member[i].begin(), member[i].end(), member[j].begin(),
                                      member[j].end(), std::back_inserter(sym));
        accumulate(sym, 0, 1);
    }

    for (auto& [k, c] : acc) m.couplings.push_back(c);
    return m;
}

std::vector<int> map_operator(const CodeLattice& lat, const PauliString& op) {
    for (std::size_t q = 0; q < op.n_qubits(); ++q)
        if (op.z_bit(q))
            throw std::invalid_argument("map_operator: operator must be a pure-X stabilizer product");
    const auto& xsets = lat.is_color() ? lat.plaquettes : lat.vertices;
    const std::size_t ns = xsets.size();
    if (lat.n_qubits > 63) throw std::invalid_argument("map_operator: lattice too large");

    // Solve sum_{v in A} support(v) = support(op) over GF(2), tracking the
    // combination through an identity block.
    std::vector<std::uint64_t> row(ns);
    for (std::size_t v = 0; v < ns; ++v) {
        std::uint64_t r = 0;
        for (auto q : xsets[v]) r |= std::uint64_t(1) << q;
        row[v] = r;
    }
    std::vector<std::vector<std::uint64_t>> combos(ns, std::vector<std::uint64_t>((ns + 63) / 64, 0));
    for (std::size_t v = 0; v < ns; ++v) combos[v][v >> 6] = std::uint64_t(1) << (v & 63);

    std::uint64_t target = support_mask(op);
    std::vector<std::uint64_t> tcombo((ns + 63) / 64, 0);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < lat.n_qubits && rank < ns; ++col) {
        const std::uint64_t mask = std::uint64_t(1) << col;
        std::size_t piv = rank;
        while (piv < ns && !(row[piv] & mask)) ++piv;
        if (piv == ns) continue;
        std::swap(row[rank], row[piv]);
        std::swap(combos[rank], combos[piv]);
        for (std::size_t r = 0; r < ns; ++r)
            if (r != rank && (row[r] & mask)) {
                row[r] ^= row[rank];
                for (std::size_t w = 0; w < combos[r].size(); ++w) combos[r][w] ^= combos[rank][w];
            }
        if (target & mask) {
            target ^= row[rank];
            for (std::size_t w = 0; w < tcombo.size(); ++w) tcombo[w] ^= combos[rank][w];
        }
        ++rank;
    }
    if (target != 0)
        throw std::invalid_argument("map_operator: operator is not in the X-stabilizer group");
    std::vector<int> spins;
    for (std::size_t v = 0; v < ns; ++v)
        if ((tcombo[v >> 6] >> (v & 63)) & 1) spins.push_back(int(v));
    return spins;
}

XorDiagMap effective_xordiag(const EffectiveModel& m, bool symmetric_sector) {
    if (symmetric_sector && !m.two_body_only())
        throw std::invalid_argument("effective_xordiag: odd couplings break spin-flip symmetry");
    const std::size_t n = m.n_spins;
    XorDiagMap map;
    map.n_index_bits = symmetric_sector ? n - 1 : n;
    const std::size_t dim = map.dim();
    // diagonal: -sum_c J_c prod sigma^z + offset; representatives have the
    // top spin fixed to 0 in the symmetric sector.
    struct ZT { std::uint64_t mask; double coeff; };
    std::vector<ZT> zt;
    for (const auto& c : m.couplings) {
        std::uint64_t mask = 0;
        for (int s : c.spins) mask |= std::uint64_t(1) << s;
        zt.push_back({mask, -m.coupling_value(c)});
    }
    map.diag.resize(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        double d = m.offset;
        for (const auto& t : zt) d += (std::popcount(s & t.mask) & 1) ? -t.coeff : t.coeff;
        map.diag[s] = d;
    }
    // transverse terms
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t im;
        if (!symmetric_sector) {
            im = std::uint64_t(1) << i;
        } else if (i < n - 1) {
            im = std::uint64_t(1) << i;
        } else {
            im = dim - 1;  // flipping the top spin maps to the complement representative
        }
        map.flips.emplace_back(im, -1.0);
    }
    return map;
}

EffGroundState effective_ground_state(const EffectiveModel& m, const EdOptions& opt,
                                      const std::vector<double>* warm) {
    const bool sym = m.two_body_only() && m.n_spins >= 2;
    XorDiagMap map = effective_xordiag(m, sym);
    LanczosOptions lo;
    lo.tol = opt.tol;
    lo.max_iter = opt.max_iter;
    lo.seed = opt.seed;
    lo.warm_start = warm;
    EigenSolution sol = lanczos_lowest(map, 1, lo);
    EffGroundState s;
    s.energy = sol.eigenvalues[0];
    s.residual = sol.residual_norms[0];
    s.symmetric_sector = sym;
    s.n_spins = m.n_spins;
    s.vec = std::move(sol.eigenvectors[0]);
    return s;
}

double effective_x_expectation(const EffGroundState& s, const std::vector<int>& spins) {
    std::uint64_t mask = 0;
    for (int i : spins) mask |= std::uint64_t(1) << i;
    const std::size_t dim = s.vec.size();
    std::uint64_t im = mask;
    if (s.symmetric_sector) {
        const std::uint64_t top = std::uint64_t(1) << (s.n_spins - 1);
        im = (mask & top) ? (mask ^ top ^ (dim - 1)) : mask;
    }
    double acc = 0;
    for (std::size_t t = 0; t < dim; ++t) acc += s.vec[t] * s.vec[t ^ im];
    return acc;
}

double effective_abs_m(const EffGroundState& s) {
    const std::size_t dim = s.vec.size();
    const double n = double(s.n_spins);
    double acc = 0;
    // symmetric-sector representatives stand for the pair (t, ~t); both
    // members share the same |m|, so the formula is common to both bases
    for (std::size_t t = 0; t < dim; ++t) {
        const int up = std::popcount(std::uint64_t(t));
        const double mm = std::abs(2.0 * up - double(s.n_spins)) / n;
        acc += mm * s.vec[t] * s.vec[t];
    }
    return acc;
}

SpectrumCheckReport spectrum_check(const CodeLattice& lat, double g, double lambda,
                                   const EdOptions& opt, double tol_energy, double tol_witness) {
    SpectrumCheckReport rep;
    // full model in the Z_P = +1 sector (both logical branches)
    auto basis = make_sector_basis(lat, false);
    const SparseHamiltonian h = assemble(lat, g, lambda);
    const XorDiagMap map = sector_map(h, *basis);
    LanczosOptions lo;
    lo.tol = opt.tol;
    lo.max_iter = opt.max_iter;
    lo.seed = opt.seed;
    EigenSolution sol = lanczos_lowest(map, 1, lo);
    rep.e0_full = sol.eigenvalues[0];

    EffectiveModel em = map_model(lat, g, lambda);
    EffGroundState es = effective_ground_state(em, opt);
    rep.e0_eff = es.energy;
    rep.offset = em.offset;
    rep.energy_ok = std::abs(rep.e0_full - (rep.e0_eff)) <= tol_energy;

    // witness expectation both ways (logical-fixed sector on the full side)
    SectorState fs = sector_ground_state(lat, g, lambda, opt);
    PauliString s1 = PauliString::identity(lat.n_qubits);
    for (auto v : lat.witness_s1_xstabs) s1 = multiply(s1, lat.x_vertex(v));
    rep.s1_full = sector_expectation(fs, s1);
    rep.s1_eff = effective_x_expectation(es, map_operator(lat, s1));
    rep.witness_ok = std::abs(rep.s1_full - rep.s1_eff) <= tol_witness;

    std::ostringstream os;
    os << "E0_full=" << rep.e0_full << " E0_eff+offset=" << rep.e0_eff
       << " dE=" << rep.e0_full - rep.e0_eff << " S1_full=" << rep.s1_full
       << " S1_eff=" << rep.s1_eff;
    rep.detail = os.str();
    return rep;
}

} // namespace tqc
