#include "tqc/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace tqc {

std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    SplitMix64 s(a ^ (0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2)));
    s.state ^= b;
    return s.next();
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void scale(std::vector<double>& a, double s) {
    for (auto& v : a) v *= s;
}

void project_out(const std::vector<const std::vector<double>*>& basis, std::vector<double>& w) {
    for (const auto* b : basis) axpy(-dot(*b, w), *b, w);
}

struct TridiagResult {
    double theta;                 // lowest Ritz value
    Eigen::VectorXd y;            // Ritz vector in the Krylov basis
};

TridiagResult lowest_ritz(const std::vector<double>& alpha, const std::vector<double>& beta) {
    const int m = int(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    TridiagResult r;
    r.theta = es.eigenvalues()(0);
    r.y = es.eigenvectors().col(0);
    return r;
}

// One deflated ground-state solve: two-pass Lanczos orthogonal to `locked`.
struct SingleResult {
    double value;
    std::vector<double> vec;
    double residual;
    int iterations;
};

SingleResult lanczos_single(const XorDiagMap& map,
                            const std::vector<const std::vector<double>*>& locked,
                            const LanczosOptions& opt, const std::vector<double>* start) {
    const std::size_t n = map.dim();
    std::vector<double> v(n), v_prev(n, 0.0), w(n);

    if (start) {
        v = *start;
    } else {
        SplitMix64 rng(opt.seed);
        for (std::size_t i = 0; i < n; ++i) v[i] = 2.0 * rng.uniform() - 1.0;
    }
    project_out(locked, v);
    double nv = norm(v);
    if (nv < 1e-14) throw std::runtime_error("lanczos: start vector vanished after deflation");
    scale(v, 1.0 / nv);
    const std::vector<double> v0 = v;  // replayed in pass 2

    std::vector<double> alpha, beta;
    TridiagResult ritz{0.0, {}};
    bool converged = false;
    int m = 0;
    const int check_every = 8;
    for (m = 1; m <= opt.max_iter; ++m) {
        map.apply(v.data(), w.data());
        if (!beta.empty()) axpy(-beta.back(), v_prev, w);
        const double a = dot(w, v);
        alpha.push_back(a);
        axpy(-a, v, w);
        project_out(locked, w);
        const double b = norm(w);
        if (b < 1e-13 || m % check_every == 0 || m == opt.max_iter) {
            ritz = lowest_ritz(alpha, beta);
            const double resid_est = b * std::abs(ritz.y(int(alpha.size()) - 1));
            if (resid_est < opt.tol || b < 1e-13) {
                converged = true;
                break;
            }
        }
        beta.push_back(b);
        v_prev.swap(v);
        v.swap(w);
        scale(v, 1.0 / b);
    }
    if (!converged) ritz = lowest_ritz(alpha, beta);

    SingleResult res;
    res.value = ritz.theta;
    res.iterations = int(alpha.size());

    if (opt.want_vectors) {
        // pass 2: replay the recursion combining Ritz coefficients
        std::vector<double> psi(n, 0.0);
        v = v0;
        std::fill(v_prev.begin(), v_prev.end(), 0.0);
        for (int i = 0; i < int(alpha.size()); ++i) {
            axpy(ritz.y(i), v, psi);
            if (i + 1 == int(alpha.size())) break;
            map.apply(v.data(), w.data());
            if (i > 0) axpy(-beta[i - 1], v_prev, w);
            axpy(-alpha[i], v, w);
            project_out(locked, w);
            scale(w, 1.0 / beta[i]);
            v_prev.swap(v);
            v.swap(w);
        }
        double np = norm(psi);
        scale(psi, 1.0 / np);
        project_out(locked, psi);
        np = norm(psi);
        scale(psi, 1.0 / np);
        // true residual
        map.apply(psi.data(), w.data());
        res.value = dot(psi, w);
        axpy(-res.value, psi, w);
        res.residual = norm(w);
        res.vec = std::move(psi);
    } else {
        res.residual = converged ? opt.tol : 1e99;
    }
    return res;
}

} // namespace

EigenSolution lanczos_lowest(const XorDiagMap& map, int k, const LanczosOptions& opt) {
    if (k < 1) throw std::invalid_argument("lanczos_lowest: k >= 1 required");
    const std::size_t n = map.dim();
    EigenSolution sol;
    if (n <= 256) {
        // small maps: dense diagonalization is both faster and exact
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t s = 0; s < n; ++s) h(s, s) = map.diag[s];
        for (const auto& [m, c] : map.flips)
            for (std::size_t s = 0; s < n; ++s) h(s ^ m, s) += c;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        for (int j = 0; j < k && j < int(n); ++j) {
            sol.eigenvalues.push_back(es.eigenvalues()(j));
            std::vector<double> v(n);
            for (std::size_t s = 0; s < n; ++s) v[s] = es.eigenvectors()(s, j);
            sol.eigenvectors.push_back(std::move(v));
            sol.residual_norms.push_back(0.0);
            sol.iterations.push_back(0);
        }
        return sol;
    }

    std::vector<std::vector<double>> locked_store;
    for (int j = 0; j < k; ++j) {
        std::vector<const std::vector<double>*> locked;
        for (const auto& l : locked_store) locked.push_back(&l);
        LanczosOptions o = opt;
        o.want_vectors = true;  // deflation needs the vector regardless
        SingleResult r{};
        const std::vector<double>* start = (j == 0) ? opt.warm_start : nullptr;
        bool ok = false;
        for (int attempt = 0; attempt < 4; ++attempt) {
            r = lanczos_single(map, locked, o, start);
            if (r.residual <= opt.tol * 10) {
                ok = true;
                break;
            }
            start = &r.vec;  // restart from the best available vector
            o.seed = hash_combine(o.seed, 0xabcdefull + attempt);
        }
        if (!ok) {
            std::ostringstream os;
            os << "lanczos_lowest: eigenpair " << j << " did not converge, residual "
               << r.residual << " (tol " << opt.tol << ")";
            throw std::runtime_error(os.str());
        }
        sol.eigenvalues.push_back(r.value);
        sol.residual_norms.push_back(r.residual);
        sol.iterations.push_back(r.iterations);
        locked_store.push_back(std::move(r.vec));
    }
    for (auto& v : locked_store) sol.eigenvectors.push_back(std::move(v));
    return sol;
}

} // namespace tqc
