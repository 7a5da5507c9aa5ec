#include "tqc/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace tqc {

namespace {

// weighted polynomial least squares; returns mean squared residual
double poly_fit_residual(const std::vector<double>& x, const std::vector<double>& y,
                         const std::vector<double>& w, int degree) {
    const int n = int(x.size());
    if (n <= degree + 1) return 0.0;
    double xs = 1e-12;
    for (double v : x) xs = std::max(xs, std::abs(v));
    Eigen::MatrixXd a(n, degree + 1);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        const double sw = w.empty() ? 1.0 : std::sqrt(w[i]);
        double t = sw;
        for (int d = 0; d <= degree; ++d) {
            a(i, d) = t;
            t *= x[i] / xs;
        }
        b(i) = sw * y[i];
    }
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    const double sse = (a * c - b).squaredNorm();
    return sse / double(n - degree - 1);
}

// Nelder-Mead with reflection into the bounding box, deterministic
// grid-seeded multistart; ties resolved toward smaller parameters.
struct NmResult {
    std::vector<double> x;
    double f = 0;
};

double reflect_into(double t, double lo, double hi) {
    if (hi <= lo) return lo;
    const double span = hi - lo;
    double u = std::fmod(t - lo, 2 * span);
    if (u < 0) u += 2 * span;
    return u <= span ? lo + u : hi - (u - span);
}

NmResult nelder_mead_box(const std::function<double(const std::vector<double>&)>& f,
                         const std::vector<double>& lo, const std::vector<double>& hi,
                         const std::vector<double>& start, int max_iter = 400) {
    const std::size_t d = lo.size();
    auto clamp = [&](std::vector<double> x) {
        for (std::size_t i = 0; i < d; ++i) x[i] = reflect_into(x[i], lo[i], hi[i]);
        return x;
    };
    struct Vertex {
        std::vector<double> x;
        double f;
    };
    std::vector<Vertex> simplex;
    simplex.push_back({clamp(start), 0});
    for (std::size_t i = 0; i < d; ++i) {
        auto x = start;
        x[i] += 0.15 * (hi[i] - lo[i]);
        simplex.push_back({clamp(x), 0});
    }
    for (auto& v : simplex) v.f = f(v.x);
    auto by_f = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    for (int it = 0; it < max_iter; ++it) {
        std::sort(simplex.begin(), simplex.end(), by_f);
        if (std::abs(simplex.back().f - simplex.front().f) <
            1e-12 * (1 + std::abs(simplex.front().f)))
            break;
        std::vector<double> centroid(d, 0);
        for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
            for (std::size_t i = 0; i < d; ++i) centroid[i] += simplex[v].x[i];
        for (auto& c : centroid) c /= double(simplex.size() - 1);
        auto& worst = simplex.back();
        auto combine = [&](double t) {
            std::vector<double> x(d);
            for (std::size_t i = 0; i < d; ++i) x[i] = centroid[i] + t * (worst.x[i] - centroid[i]);
            return clamp(x);
        };
        auto xr = combine(-1.0);
        const double fr = f(xr);
        if (fr < simplex.front().f) {
            auto xe = combine(-2.0);
            const double fe = f(xe);
            if (fe < fr) worst = {xe, fe};
            else worst = {xr, fr};
        } else if (fr < simplex[simplex.size() - 2].f) {
            worst = {xr, fr};
        } else {
            auto xc = combine(0.5);
            const double fc = f(xc);
            if (fc < worst.f) {
                worst = {xc, fc};
            } else {
                for (std::size_t v = 1; v < simplex.size(); ++v) {
                    for (std::size_t i = 0; i < d; ++i)
                        simplex[v].x[i] =
                            simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
                    simplex[v].f = f(simplex[v].x);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_f);
    return {simplex.front().x, simplex.front().f};
}

NmResult multistart_minimize(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& lo, const std::vector<double>& hi,
                             const std::vector<std::vector<double>>& starts) {
    NmResult best;
    best.f = 1e300;
    for (const auto& s : starts) {
        NmResult r = nelder_mead_box(f, lo, hi, s);
        const bool better =
            r.f < best.f - 1e-15 ||
            (std::abs(r.f - best.f) <= 1e-15 && !best.x.empty() && r.x < best.x);
        if (best.x.empty() || better) best = r;
    }
    return best;
}

bool near_bound(double v, double lo, double hi) {
    return std::abs(v - lo) < 1e-4 * (hi - lo) || std::abs(v - hi) < 1e-4 * (hi - lo);
}

LinearFit linear_regression(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = int(x.size());
    if (n < 2) throw std::invalid_argument("linear fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double sse = 0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - fit.slope * x[i] - fit.intercept;
        sse += r * r;
    }
    fit.residual = std::sqrt(sse / n);
    const double s2 = n > 2 ? sse / (n - 2) : 0.0;
    fit.slope_err = std::sqrt(s2 * n / denom);
    fit.intercept_err = std::sqrt(s2 * sxx / denom);
    return fit;
}

} // namespace

PeakEstimate locate_peak(const SizeSeries& s) {
    if (s.pts.size() < 3) throw std::invalid_argument("locate_peak: need at least three points");
    std::size_t k = 0;
    for (std::size_t i = 1; i < s.pts.size(); ++i)
        if (s.pts[i].value > s.pts[k].value) k = i;
    if (k == 0 || k + 1 == s.pts.size())
        throw std::runtime_error("locate_peak: series does not bracket its maximum");
    const auto &l = s.pts[k - 1], &c = s.pts[k], &r = s.pts[k + 1];
    // vertex of the parabola through three (not necessarily equidistant) points
    const double d1 = (c.value - l.value) / (c.p - l.p);
    const double d2 = (r.value - c.value) / (r.p - c.p);
    PeakEstimate pe;
    if (d2 - d1 >= 0) {  // flat or concave-up to numerical precision
        pe.p_max = c.p;
        pe.value_max = c.value;
        return pe;
    }
    const double mid1 = (l.p + c.p) / 2.0, mid2 = (c.p + r.p) / 2.0;
    pe.p_max = mid1 - d1 * (mid2 - mid1) / (d2 - d1);
    const double x0 = l.p, x1 = c.p, x2 = r.p;
    const double y0 = l.value, y1 = c.value, y2 = r.value;
    const double t = pe.p_max;
    pe.value_max = y0 * (t - x1) * (t - x2) / ((x0 - x1) * (x0 - x2)) +
                   y1 * (t - x0) * (t - x2) / ((x1 - x0) * (x1 - x2)) +
                   y2 * (t - x0) * (t - x1) / ((x2 - x0) * (x2 - x1));
    return pe;
}

LinearFit fit_power_law(const std::vector<std::pair<double, double>>& size_value) {
    std::vector<double> x, y;
    for (auto& [s, v] : size_value) {
        if (v <= 0) throw std::invalid_argument("fit_power_law: values must be positive");
        x.push_back(std::log(s));
        y.push_back(std::log(v));
    }
    return linear_regression(x, y);
}

LinearFit fit_log_divergence(const std::vector<std::pair<double, double>>& size_value) {
    std::vector<double> x, y;
    for (auto& [s, v] : size_value) {
        x.push_back(std::log(s));
        y.push_back(v);
    }
    return linear_regression(x, y);
}

AsymptoteFit fit_asymptote(const std::vector<std::pair<double, double>>& size_pmax) {
    const int n = int(size_pmax.size());
    if (n < 3) throw std::invalid_argument("fit_asymptote: need at least three sizes");
    const double dlo = 0.05, dhi = 5.0;
    auto solve_given_delta = [&](double delta, double* pc, double* alpha, double* pc_err) {
        Eigen::MatrixXd a(n, 2);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            a(i, 0) = 1.0;
            a(i, 1) = std::pow(size_pmax[i].first, -delta);
            b(i) = size_pmax[i].second;
        }
        Eigen::Vector2d c = (a.transpose() * a).ldlt().solve(a.transpose() * b);
        const double sse = (a * c - b).squaredNorm();
        if (pc) *pc = c(0);
        if (alpha) *alpha = c(1);
        if (pc_err) {
            const double s2 = n > 2 ? sse / (n - 2) : 0.0;
            Eigen::Matrix2d cov = s2 * (a.transpose() * a).inverse();
            *pc_err = std::sqrt(std::max(0.0, cov(0, 0)));
        }
        return sse;
    };
    // coarse scan then golden refinement on delta
    double best_d = dlo, best_sse = 1e300;
    for (int k = 0; k <= 120; ++k) {
        const double d = dlo + (dhi - dlo) * k / 120.0;
        const double sse = solve_given_delta(d, nullptr, nullptr, nullptr);
        if (sse < best_sse) {
            best_sse = sse;
            best_d = d;
        }
    }
    double a = std::max(dlo, best_d - (dhi - dlo) / 120.0);
    double b = std::min(dhi, best_d + (dhi - dlo) / 120.0);
    const double gr = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 80; ++it) {
        const double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        if (solve_given_delta(x1, nullptr, nullptr, nullptr) <
            solve_given_delta(x2, nullptr, nullptr, nullptr))
            b = x2;
        else
            a = x1;
    }
    AsymptoteFit fit;
    fit.delta = (a + b) / 2;
    fit.residual = solve_given_delta(fit.delta, &fit.p_c, &fit.alpha, &fit.p_c_err);
    fit.residual = std::sqrt(fit.residual / n);
    fit.delta_at_bound = near_bound(fit.delta, dlo, dhi);
    return fit;
}

namespace {

CollapseResult collapse_peaked(const ScalingDataset& ds, const CollapseOptions& opt,
                               bool exponent_is_inverse, bool exp_ordinate) {
    if (ds.series.size() < 3)
        throw std::invalid_argument("collapse: need at least three sizes");
    std::vector<PeakEstimate> peaks;
    for (const auto& s : ds.series) peaks.push_back(locate_peak(s));

    auto objective = [&](const std::vector<double>& params) {
        const double nu = params[0];
        // rescale, then fit only inside the window covered by every size --
        // otherwise the polynomial truncation error of the widest series
        // competes with the collapse quality itself
        std::vector<std::vector<double>> xs(ds.series.size()), ys(ds.series.size());
        double x_lo = -1e300, x_hi = 1e300;
        for (std::size_t k = 0; k < ds.series.size(); ++k) {
            const auto& s = ds.series[k];
            const double scale =
                exponent_is_inverse ? std::pow(s.size, 1.0 / nu) : std::pow(s.size, nu);
            double lo = 1e300, hi = -1e300;
            for (const auto& pt : s.pts) {
                const double x = scale * (pt.p - peaks[k].p_max);
                xs[k].push_back(x);
                if (exp_ordinate)
                    ys[k].push_back(std::exp(pt.value - peaks[k].value_max));
                else
                    ys[k].push_back((peaks[k].value_max - pt.value) / pt.value);
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            x_lo = std::max(x_lo, lo);
            x_hi = std::min(x_hi, hi);
        }
        std::vector<double> fx, fy;
        for (std::size_t k = 0; k < ds.series.size(); ++k)
            for (std::size_t i = 0; i < xs[k].size(); ++i)
                if (xs[k][i] >= x_lo - 1e-12 && xs[k][i] <= x_hi + 1e-12) {
                    fx.push_back(xs[k][i]);
                    fy.push_back(ys[k][i]);
                }
        return poly_fit_residual(fx, fy, {}, opt.poly_degree);
    };

    std::vector<std::vector<double>> starts;
    for (int k = 0; k < opt.multistart; ++k)
        starts.push_back({opt.nu_lo + (opt.nu_hi - opt.nu_lo) * (k + 0.5) / opt.multistart});
    NmResult best = multistart_minimize(objective, {opt.nu_lo}, {opt.nu_hi}, starts);

    CollapseResult res;
    res.nu = best.x[0];
    res.residual = best.f;
    res.nu_at_bound = near_bound(res.nu, opt.nu_lo, opt.nu_hi);
    for (std::size_t k = 0; k < ds.series.size(); ++k)
        res.peaks.push_back({ds.series[k].size, peaks[k].p_max});
    res.asymptote = fit_asymptote(res.peaks);
    res.p_c = res.asymptote.p_c;
    std::ostringstream os;
    os << "nu=" << res.nu << " p_c=" << res.p_c << " (alpha=" << res.asymptote.alpha
       << ", delta=" << res.asymptote.delta << ") residual=" << res.residual;
    res.detail = os.str();
    return res;
}

} // namespace

CollapseResult collapse_fs(const ScalingDataset& ds, const CollapseOptions& opt) {
    return collapse_peaked(ds, opt, /*exponent_is_inverse=*/false, /*exp_ordinate=*/false);
}

CollapseResult collapse_witness(const ScalingDataset& ds, const CollapseOptions& opt) {
    return collapse_peaked(ds, opt, /*exponent_is_inverse=*/true, /*exp_ordinate=*/true);
}

CollapseResult collapse_m(const ScalingDataset& ds, const CollapseOptions& opt) {
    if (ds.series.size() < 3)
        throw std::invalid_argument("collapse_m: need at least three sizes");
    bool weighted = true;
    for (const auto& s : ds.series)
        for (const auto& pt : s.pts)
            if (!(pt.err > 0)) weighted = false;

    double p_lo = -1e300, p_hi = 1e300;
    for (const auto& s : ds.series) {
        p_lo = std::max(p_lo, s.pts.front().p);
        p_hi = std::min(p_hi, s.pts.back().p);
    }
    if (!(p_lo < p_hi)) throw std::invalid_argument("collapse_m: series do not overlap in p");

    auto objective = [&](const std::vector<double>& params) {
        const double nu = params[0], beta = params[1], pc = params[2];
        std::vector<std::vector<double>> xs(ds.series.size()), ys(ds.series.size()),
            ws(ds.series.size());
        double x_lo = -1e300, x_hi = 1e300;
        for (std::size_t k = 0; k < ds.series.size(); ++k) {
            const auto& s = ds.series[k];
            const double yscale = std::pow(s.size, beta / nu);
            const double xscale = std::pow(s.size, 1.0 / nu);
            double lo = 1e300, hi = -1e300;
            for (const auto& pt : s.pts) {
                const double x = xscale * (pt.p - pc);
                xs[k].push_back(x);
                ys[k].push_back(yscale * pt.value);
                if (weighted) {
                    const double sigma = yscale * pt.err;
                    ws[k].push_back(1.0 / (sigma * sigma));
                }
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            x_lo = std::max(x_lo, lo);
            x_hi = std::min(x_hi, hi);
        }
        std::vector<double> fx, fy, fw;
        for (std::size_t k = 0; k < ds.series.size(); ++k)
            for (std::size_t i = 0; i < xs[k].size(); ++i)
                if (xs[k][i] >= x_lo - 1e-12 && xs[k][i] <= x_hi + 1e-12) {
                    fx.push_back(xs[k][i]);
                    fy.push_back(ys[k][i]);
                    if (weighted) fw.push_back(ws[k][i]);
                }
        return poly_fit_residual(fx, fy, weighted ? fw : std::vector<double>{}, opt.poly_degree);
    };

    std::vector<std::vector<double>> starts;
    const double bmid = 0.5 * (opt.beta_lo + opt.beta_hi);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            starts.push_back({opt.nu_lo + (opt.nu_hi - opt.nu_lo) * (i + 0.5) / 3.0, bmid,
                              p_lo + (p_hi - p_lo) * (j + 0.5) / 3.0});
    NmResult best = multistart_minimize(objective, {opt.nu_lo, opt.beta_lo, p_lo},
                                        {opt.nu_hi, opt.beta_hi, p_hi}, starts);

    CollapseResult res;
    res.nu = best.x[0];
    res.beta = best.x[1];
    res.p_c = best.x[2];
    res.residual = best.f;
    res.nu_at_bound = near_bound(res.nu, opt.nu_lo, opt.nu_hi);
    res.beta_at_bound = near_bound(res.beta, opt.beta_lo, opt.beta_hi);
    std::ostringstream os;
    os << "nu=" << res.nu << " beta=" << res.beta << " p_c=" << res.p_c
       << " residual=" << res.residual << (weighted ? " (weighted)" : " (unweighted)");
    res.detail = os.str();
    return res;
}

PolyFit fit_phase_boundary(const std::vector<std::pair<double, double>>& g_lambda, int degree) {
    const int n = int(g_lambda.size());
    if (n < degree + 1)
        throw std::invalid_argument("fit_phase_boundary: fewer points than coefficients");
    Eigen::MatrixXd a(n, degree + 1);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        double t = 1.0;
        for (int d = 0; d <= degree; ++d) {
            a(i, d) = t;
            t *= g_lambda[i].first;
        }
        b(i) = g_lambda[i].second;
    }
    Eigen::VectorXd c = (a.transpose() * a).ldlt().solve(a.transpose() * b);
    const double sse = (a * c - b).squaredNorm();
    PolyFit fit;
    for (int d = 0; d <= degree; ++d) fit.coeff.push_back(c(d));
    const double s2 = n > degree + 1 ? sse / (n - degree - 1) : 0.0;
    Eigen::MatrixXd cov = s2 * (a.transpose() * a).inverse();
    for (int d = 0; d <= degree; ++d) fit.err.push_back(std::sqrt(std::max(0.0, cov(d, d))));
    fit.residual = std::sqrt(sse / n);
    return fit;
}

} // namespace tqc
