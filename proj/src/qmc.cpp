#include "tqc/qmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tqc/solver.hpp"

namespace tqc {

namespace {

struct Bond {
    int a, b;
    double coupling;
};

struct UnionFind {
    std::vector<int> parent;
    void reset(std::size_t n) {
        parent.resize(n);
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        int root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            int next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

struct Accumulator {
    std::vector<double> abs_m, signed_m, m2, m4, sx, cfrac;
    void push(double a, double sm, double b, double c, double d, double e) {
        abs_m.push_back(a);
        signed_m.push_back(sm);
        m2.push_back(b);
        m4.push_back(c);
        sx.push_back(d);
        cfrac.push_back(e);
    }
};

struct BinStats {
    double mean = 0, err = 0;
    std::vector<double> bins;
};

BinStats bin_series(const std::vector<double>& xs, int n_bins) {
    BinStats st;
    const std::size_t per = std::max<std::size_t>(1, xs.size() / n_bins);
    for (std::size_t start = 0; start + per <= xs.size(); start += per) {
        double s = 0;
        for (std::size_t i = start; i < start + per; ++i) s += xs[i];
        st.bins.push_back(s / double(per));
    }
    const std::size_t nb = st.bins.size();
    for (double b : st.bins) st.mean += b;
    st.mean /= double(nb);
    double var = 0;
    for (double b : st.bins) var += (b - st.mean) * (b - st.mean);
    if (nb > 1) st.err = std::sqrt(var / double(nb * (nb - 1)));
    return st;
}

} // namespace

double default_beta(const EffectiveModel& model) {
    return std::max(2.0 * std::max(model.M, model.D), 64.0);
}

QmcEstimate qmc_run(const EffectiveModel& model, const QmcConfig& cfg) {
    if (!model.two_body_only())
        throw std::invalid_argument(
            "qmc_run: couplings beyond two-body are unsupported (no cluster rule here)");
    const int n = int(model.n_spins);
    if (n < 1) throw std::invalid_argument("qmc_run: empty model");
    if (cfg.beta <= 0 || cfg.meas_sweeps <= 0 || cfg.n_bins < 10)
        throw std::invalid_argument("qmc_run: need beta > 0, sweeps > 0, bins >= 10");

    std::vector<Bond> bonds;
    for (const auto& c : model.couplings) {
        const double j = model.coupling_value(c);
        if (j < 0) throw std::invalid_argument("qmc_run: antiferromagnetic coupling rejected");
        if (j > 0) bonds.push_back({c.spins[0], c.spins[1], j});
    }
    {
        // connectivity of the coupling graph; decoupled pieces have
        // independently flipping order parameters
        std::vector<std::vector<int>> adj(n);
        for (const auto& b : bonds) {
            adj[b.a].push_back(b.b);
            adj[b.b].push_back(b.a);
        }
        std::vector<char> seen(n, 0);
        std::vector<int> stack = {0};
        seen[0] = 1;
        int cnt = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++cnt;
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        if (cnt != n && !cfg.allow_disconnected)
            throw std::invalid_argument(
                "qmc_run: coupling graph is disconnected (decoupled chains); "
                "pass allow_disconnected to force");
    }

    const double beta = cfg.beta;
    SplitMix64 rng(cfg.seed);

    // worldlines: sorted kink times in (0, beta) per site, plus the value
    // at tau = 0.  Cut sets live strictly inside (0, beta), so the segment
    // containing tau = 0 wraps around the periodic boundary.
    std::vector<std::vector<double>> kinks(n);
    std::vector<signed char> spin0(n);
    for (int i = 0; i < n; ++i) spin0[i] = rng.next() & 1 ? 1 : -1;

    // scratch
    std::vector<std::vector<double>> cuts(n);
    std::vector<int> seg_off(n + 1);
    std::vector<signed char> segval;
    UnionFind uf;
    std::vector<signed char> flip;
    Accumulator acc;

    const long discard = cfg.meas_sweeps / 10;  // on top of thermalization
    const long total = cfg.therm_sweeps + discard + cfg.meas_sweeps;

    for (long sweep = 0; sweep < total; ++sweep) {
        // 1. cut points: the existing kinks plus fresh Poisson(1) marks
        for (int i = 0; i < n; ++i) {
            auto& c = cuts[i];
            c.clear();
            double t = -std::log(1.0 - rng.uniform());
            std::size_t ki = 0;
            const auto& kk = kinks[i];
            while (ki < kk.size() || t < beta) {
                if (ki < kk.size() && (t >= beta || kk[ki] <= t)) {
                    c.push_back(kk[ki]);
                    ++ki;
                } else {
                    c.push_back(t);
                    t += -std::log(1.0 - rng.uniform());
                }
            }
        }
        // 2. segment table; segment j of a site starts at its cut j and the
        // last segment wraps through tau = 0 (an uncut site is one segment)
        seg_off[0] = 0;
        for (int i = 0; i < n; ++i)
            seg_off[i + 1] = seg_off[i] + std::max<int>(1, int(cuts[i].size()));
        const int n_seg = seg_off[n];
        segval.assign(n_seg, 0);
        for (int i = 0; i < n; ++i) {
            signed char v = spin0[i];
            std::size_t ki = 0;
            const auto& kk = kinks[i];
            const auto& c = cuts[i];
            if (c.empty()) {
                segval[seg_off[i]] = v;
                continue;
            }
            for (std::size_t j = 0; j < c.size(); ++j) {
                while (ki < kk.size() && kk[ki] <= c[j]) {
                    v = -v;
                    ++ki;
                }
                segval[seg_off[i] + int(j)] = v;
            }
        }
        uf.reset(n_seg);
        // 3. freeze bonds on same-spin stretches
        for (const auto& bond : bonds) {
            const auto& ca = cuts[bond.a];
            const auto& cb = cuts[bond.b];
            const int oa = seg_off[bond.a], ob = seg_off[bond.b];
            const int ka = int(ca.size()), kb = int(cb.size());
            int ja = ka > 0 ? ka - 1 : 0;  // segment covering tau = 0
            int jb = kb > 0 ? kb - 1 : 0;
            int na = 0, nb = 0;  // next cut indices
            double t = 0.0;
            const double rate = 2.0 * bond.coupling;
            double next_mark = t - std::log(1.0 - rng.uniform()) / rate;
            while (t < beta) {
                const double ea = na < ka ? ca[na] : beta;
                const double eb = nb < kb ? cb[nb] : beta;
                const double end = std::min(ea, eb);
                if (segval[oa + ja] == segval[ob + jb]) {
                    if (next_mark < end) {
                        uf.unite(oa + ja, ob + jb);
                        // later marks inside this stretch are redundant;
                        // restart the exponential clock at its end
                        next_mark = end - std::log(1.0 - rng.uniform()) / rate;
                    }
                } else {
                    // marks never land on anti-aligned stretches: delete the
                    // stretch from the clock's timeline (memorylessness)
                    next_mark += end - t;
                }
                t = end;
                if (ea <= end && na < ka) {
                    ja = na;
                    ++na;
                }
                if (eb <= end && nb < kb) {
                    jb = nb;
                    ++nb;
                }
            }
        }
        // 4. flip clusters with probability 1/2
        flip.assign(n_seg, -1);
        for (int s = 0; s < n_seg; ++s) {
            const int r = uf.find(s);
            if (flip[r] < 0) flip[r] = rng.next() & 1;
        }
        int n_clusters = 0;
        for (int s = 0; s < n_seg; ++s)
            if (uf.find(s) == s) ++n_clusters;
        // 5. rebuild worldlines
        long kink_count = 0;
        for (int i = 0; i < n; ++i) {
            auto& kk = kinks[i];
            kk.clear();
            const auto& c = cuts[i];
            const int o = seg_off[i];
            auto val = [&](int j) {
                return static_cast<signed char>(segval[o + j] * (flip[uf.find(o + j)] ? -1 : 1));
            };
            const int k = int(c.size());
            if (k == 0) {
                spin0[i] = val(0);
                continue;
            }
            spin0[i] = val(k - 1);  // wrap segment holds tau = 0
            for (int j = 0; j < k; ++j)
                if (val(j) != val((j - 1 + k) % k)) kk.push_back(c[j]);
            kink_count += long(kk.size());
        }
        // 6. measure
        if (sweep >= cfg.therm_sweeps + discard) {
            double s_abs = 0, s_sgn = 0, s_m2 = 0, s_m4 = 0;
            for (int sl = 0; sl < cfg.slices; ++sl) {
                const double tau = (sl + 0.5) * beta / cfg.slices;
                long mag = 0;
                for (int i = 0; i < n; ++i) {
                    const auto& kk = kinks[i];
                    const std::size_t nk =
                        std::upper_bound(kk.begin(), kk.end(), tau) - kk.begin();
                    mag += (nk & 1) ? -spin0[i] : spin0[i];
                }
                const double m = double(mag) / double(n);
                s_abs += std::abs(m);
                s_sgn += m;
                s_m2 += m * m;
                s_m4 += m * m * m * m;
            }
            acc.push(s_abs / cfg.slices, s_sgn / cfg.slices, s_m2 / cfg.slices,
                     s_m4 / cfg.slices, double(kink_count) / (beta * n),
                     double(n_clusters) / double(n_seg));
        }
    }

    BinStats st_abs = bin_series(acc.abs_m, cfg.n_bins);
    BinStats st_sgn = bin_series(acc.signed_m, cfg.n_bins);
    BinStats st_m2 = bin_series(acc.m2, cfg.n_bins);
    BinStats st_m4 = bin_series(acc.m4, cfg.n_bins);
    BinStats st_sx = bin_series(acc.sx, cfg.n_bins);
    BinStats st_cf = bin_series(acc.cfrac, cfg.n_bins);

    QmcEstimate est;
    est.mean_abs_m = st_abs.mean;
    est.stderr_abs_m = st_abs.err;
    est.mean_m = st_sgn.mean;
    est.stderr_m = st_sgn.err;
    est.m2 = st_m2.mean;
    est.stderr_m2 = st_m2.err;
    est.m4 = st_m4.mean;
    est.stderr_m4 = st_m4.err;
    est.mean_sx = st_sx.mean;
    est.clusters_per_segment = st_cf.mean;
    est.beta = beta;
    est.sweeps = cfg.meas_sweeps;
    est.seed = cfg.seed;
    // Binder cumulant with jackknife over bins
    const std::size_t nb = std::min(st_m2.bins.size(), st_m4.bins.size());
    auto binder_of = [](double m2, double m4) { return 1.0 - m4 / (3.0 * m2 * m2); };
    est.binder = binder_of(st_m2.mean, st_m4.mean);
    if (nb > 1) {
        double sum2 = 0, sum4 = 0;
        for (std::size_t b = 0; b < nb; ++b) {
            sum2 += st_m2.bins[b];
            sum4 += st_m4.bins[b];
        }
        std::vector<double> jk(nb);
        double jk_mean = 0;
        for (std::size_t b = 0; b < nb; ++b) {
            const double m2 = (sum2 - st_m2.bins[b]) / double(nb - 1);
            const double m4 = (sum4 - st_m4.bins[b]) / double(nb - 1);
            jk[b] = binder_of(m2, m4);
            jk_mean += jk[b];
        }
        jk_mean /= double(nb);
        double var = 0;
        for (double v : jk) var += (v - jk_mean) * (v - jk_mean);
        est.stderr_binder = std::sqrt(var * double(nb - 1) / double(nb));
    }
    return est;
}

std::vector<QmcSweepPoint> qmc_sweep(const CodeLattice& lat, Axis axis,
                                     const std::vector<double>& grid, double fixed_other,
                                     const QmcConfig& tmpl) {
    std::vector<QmcSweepPoint> out;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        QmcSweepPoint pt;
        pt.p = grid[k];
        try {
            auto [g, l] = axis_params(axis, grid[k], fixed_other);
            EffectiveModel m = map_model(lat, g, l);
            QmcConfig cfg = tmpl;
            if (cfg.beta <= 0) cfg.beta = default_beta(m);
            cfg.seed = hash_combine(tmpl.seed, k + 1);
            pt.est = qmc_run(m, cfg);
        } catch (const std::exception& e) {
            pt.failed = true;
            pt.error = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace tqc
