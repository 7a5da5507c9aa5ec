#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tqc {

struct SeriesPoint {
    double p = 0, value = 0, err = 0;
};

struct SizeSeries {
    double size = 0;  // D, or M for narrow cylinders
    std::vector<SeriesPoint> pts;
};

struct ScalingDataset {
    std::vector<SizeSeries> series;
    std::string observable;  // "fs", "m", "dw"
    std::string axis;        // "g" or "lambda"
};

struct PeakEstimate {
    double p_max = 0, value_max = 0;
};

// Quadratic interpolation through the three grid points around the discrete
// maximum; throws if the maximum sits on the edge of the series.
PeakEstimate locate_peak(const SizeSeries& s);

struct LinearFit {
    double slope = 0, slope_err = 0;
    double intercept = 0, intercept_err = 0;
    double residual = 0;  // root mean squared residual
};

// slope of log(value) against log(size); values must be positive
LinearFit fit_power_law(const std::vector<std::pair<double, double>>& size_value);
// slope of value against log(size)
LinearFit fit_log_divergence(const std::vector<std::pair<double, double>>& size_value);

struct AsymptoteFit {
    double p_c = 0, alpha = 0, delta = 0;
    double p_c_err = 0;
    double residual = 0;
    bool delta_at_bound = false;
};

// p_max(size) = p_c + alpha / size^delta by profiled least squares
AsymptoteFit fit_asymptote(const std::vector<std::pair<double, double>>& size_pmax);

struct CollapseOptions {
    double nu_lo = 0.622, nu_hi = 1.0;      // quasi-1D bracket between the 1D and 2D values
    double beta_lo = 0.125, beta_hi = 0.314;
    int poly_degree = 8;
    int multistart = 9;
};

struct CollapseResult {
    double nu = 0;
    double beta = 0;    // collapse_m only
    double p_c = 0;
    double residual = 0;
    bool nu_at_bound = false, beta_at_bound = false;
    std::vector<std::pair<double, double>> peaks;  // (size, p_max); peak-based collapses
    AsymptoteFit asymptote;                        // p_max extrapolation; peak-based collapses
    std::string detail;
};

// [chi(p_max)-chi(p)]/chi(p) against D^nu (p - p_max), degree-8 polynomial
// least squares, residual minimized over nu; p_c from the p_max asymptote.
CollapseResult collapse_fs(const ScalingDataset& ds, const CollapseOptions& opt = {});

// m D^{beta/nu} against D^{1/nu} (p - p_c), joint weighted fit over
// (nu, beta, p_c).
CollapseResult collapse_m(const ScalingDataset& ds, const CollapseOptions& opt = {});

// exp(d - d_max) against D^{1/nu} (p - p_max) for derivative series d(p).
CollapseResult collapse_witness(const ScalingDataset& ds, const CollapseOptions& opt = {});

struct PolyFit {
    std::vector<double> coeff;  // ascending powers
    std::vector<double> err;
    double residual = 0;
};

// least-squares polynomial lambda_c(g); degree 1 (linear) or 2 (quadratic)
PolyFit fit_phase_boundary(const std::vector<std::pair<double, double>>& g_lambda, int degree);

} // namespace tqc
