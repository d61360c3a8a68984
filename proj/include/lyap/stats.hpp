#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lyap/kernels.hpp"
#include "lyap/lyapunov.hpp"

namespace lyap {

struct HistogramSpec {
    double lo = -2.0;
    double hi = 2.0;
    double bin_width = 0.1;
    int bootstrap_rounds = 400;
    std::uint64_t seed = 0;
    void validate() const;
    int bins() const;
    std::vector<double> edges() const;
};

struct EmpiricalDensity {
    std::vector<double> bin_edges;
    std::vector<std::uint64_t> counts;
    std::uint64_t n_samples = 0;
    std::vector<double> normalized_values;  // unit mean over the window
    std::vector<double> stderr_values;      // bootstrap over whole samples
    std::vector<double> centers() const;
    DensityCurve to_curve(std::string label = "empirical") const;
};

struct ComparisonReport {
    double sup_norm = 0;
    double chi_square = 0;
    int dof = 0;
    bool pass = false;
    double tolerance_used = 0;
    double within_3sigma = 0;  // fraction of bins with |empirical - analytic| <= 3 stderr
};

// p_j = exp(2 lambda_j) / N
std::vector<double> unfold_bulk(const LyapunovSpectrum& spectrum);

enum class CenterMode {
    Raw,       // xi = exp(2 lambda) - N p
    Analytic,  // xi - (delta_p - 1): pickets at integers, j_center at 0
    Fitted,    // xi - shift, shift from fit_center_shift
};

struct LocalCoordinateOptions {
    CenterMode mode = CenterMode::Analytic;
    double shift = 0;  // Fitted only
};

std::vector<double> local_coordinate(const LyapunovSpectrum& spectrum, int j_center, int window,
                                     const LocalCoordinateOptions& opts = {});

// Mean of exp(2 lambda_j) - N p - (j - j_center) over samples and window indices.
double fit_center_shift(std::span<const LyapunovSpectrum> spectra, int j_center, int window);

struct SoftFit {
    double c1 = 0;
    double c2 = 0;
    double c3 = 0;
    double residual = 0;  // Euclidean norm of the fit residual
    double cumulative(double x) const;
    double derivative(double x) const;
};

// Least squares of rank ~ c1 x + c2 x^{3/2} + c3 x^2.
SoftFit soft_unfold_fit(std::span<const std::pair<double, double>> cumulative_samples);

// Divides an edge density (decaying to the right) by the derivative of its fitted
// cumulative count from the top; x = -xi, fit on x in [x_lo, x_hi].
DensityCurve unfold_soft_curve(const DensityCurve& curve, double x_lo, double x_hi);

// values[s] holds the local coordinates of product sample s.
EmpiricalDensity make_histogram(const std::vector<std::vector<double>>& values, const HistogramSpec& spec);

// Bin averages of f (Simpson, `sub` even panels per bin), tabulated at bin centers.
DensityCurve bin_average(const std::function<double(double)>& f, std::span<const double> edges,
                         std::string label, int sub = 8);

ComparisonReport compare(const EmpiricalDensity& empirical, const DensityCurve& analytic, double tolerance);

// Kolmogorov-Smirnov distance of the values inside [lo, hi] to the uniform law there.
double ks_uniform_distance(std::span<const double> values, double lo, double hi);

}  // namespace lyap
