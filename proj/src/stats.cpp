#include "lyap/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "lyap/error.hpp"

namespace lyap {

void HistogramSpec::validate() const
{
    if (!(hi > lo)) throw DomainError("histogram: need hi > lo");
    if (!(bin_width > 0)) throw DomainError("histogram: bin_width must be positive");
    if (bootstrap_rounds < 2) throw DomainError("histogram: need at least 2 bootstrap rounds");
    if (bins() < 1) throw DomainError("histogram: empty window");
}

int HistogramSpec::bins() const
{
    return static_cast<int>(std::lround((hi - lo) / bin_width));
}

std::vector<double> HistogramSpec::edges() const
{
    const int nb = bins();
    std::vector<double> e(nb + 1);
    for (int i = 0; i <= nb; ++i) e[i] = lo + (hi - lo) * i / nb;
    return e;
}

std::vector<double> EmpiricalDensity::centers() const
{
    std::vector<double> c(counts.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (bin_edges[i] + bin_edges[i + 1]);
    return c;
}

DensityCurve EmpiricalDensity::to_curve(std::string label) const
{
    return DensityCurve{centers(), normalized_values, std::move(label), {}};
}

std::vector<double> unfold_bulk(const LyapunovSpectrum& spectrum)
{
    std::vector<double> p(spectrum.lambdas.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(2 * spectrum.lambdas[i]) / spectrum.n;
    return p;
}

namespace {

void check_window(int n, int j_center, int window)
{
    if (window < 0 || window > 4) throw DomainError("local_coordinate: window must lie in [0, 4]");
    if (j_center - window < 2 || j_center + window > n - 1)
        throw DomainError("local_coordinate: window reaches the spectral edge");
}

}  // namespace

std::vector<double> local_coordinate(const LyapunovSpectrum& spectrum, int j_center, int window,
                                     const LocalCoordinateOptions& opts)
{
    const int n = spectrum.n;
    check_window(n, j_center, window);
    if (static_cast<int>(spectrum.lambdas.size()) != n) throw DomainError("local_coordinate: spectrum size != n");
    const double np = j_center;
    double shift = 0;
    switch (opts.mode) {
    case CenterMode::Raw:
        break;
    case CenterMode::Analytic:
        shift = delta_p(n, np / n, static_cast<double>(n) / spectrum.m) - 1;
        break;
    case CenterMode::Fitted:
        shift = opts.shift;
        break;
    }
    std::vector<double> xi;
    xi.reserve(2 * window + 1);
    for (int j = j_center - window; j <= j_center + window; ++j)
        xi.push_back(std::exp(2 * spectrum.lambdas[j - 1]) - np - shift);
    return xi;
}

double fit_center_shift(std::span<const LyapunovSpectrum> spectra, int j_center, int window)
{
    if (spectra.empty()) throw DomainError("fit_center_shift: no spectra");
    double acc = 0;
    std::size_t count = 0;
    LocalCoordinateOptions raw{CenterMode::Raw, 0};
    for (const auto& s : spectra) {
        const auto xi = local_coordinate(s, j_center, window, raw);
        for (int k = 0; k < static_cast<int>(xi.size()); ++k) {
            acc += xi[k] - (k - window);
            ++count;
        }
    }
    return acc / count;
}

double SoftFit::cumulative(double x) const
{
    return c1 * x + c2 * std::pow(x, 1.5) + c3 * x * x;
}

double SoftFit::derivative(double x) const
{
    return c1 + 1.5 * c2 * std::sqrt(x) + 2 * c3 * x;
}

SoftFit soft_unfold_fit(std::span<const std::pair<double, double>> cumulative_samples)
{
    const auto n = static_cast<Eigen::Index>(cumulative_samples.size());
    if (n < 50) throw DomainError("soft_unfold_fit: need at least 50 points");
    Eigen::MatrixXd a(n, 3);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto [x, rank] = cumulative_samples[i];
        if (!(x >= 0)) throw DomainError("soft_unfold_fit: x must be nonnegative");
        a(i, 0) = x;
        a(i, 1) = x * std::sqrt(x);
        a(i, 2) = x * x;
        b(i) = rank;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-12);
    if (qr.rank() < 3) throw NumericalError("soft_unfold_fit: rank-deficient fit");
    const Eigen::Vector3d c = qr.solve(b);
    return SoftFit{c(0), c(1), c(2), (a * c - b).norm()};
}

DensityCurve unfold_soft_curve(const DensityCurve& curve, double x_lo, double x_hi)
{
    curve.validate();
    const auto& xs = curve.xs;
    const auto& v = curve.values;
    const std::size_t n = xs.size();
    std::vector<double> cum(n, 0.0);
    for (std::size_t i = n - 1; i-- > 0;) cum[i] = cum[i + 1] + 0.5 * (v[i] + v[i + 1]) * (xs[i + 1] - xs[i]);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -xs[i];
        if (x >= x_lo && x <= x_hi) pts.emplace_back(x, cum[i]);
    }
    const SoftFit fit = soft_unfold_fit(pts);
    DensityCurve out;
    out.label = curve.label + " unfolded";
    out.meta = curve.meta;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -xs[i];
        if (x < x_lo || x > x_hi) continue;
        out.xs.push_back(xs[i]);
        out.values.push_back(v[i] / fit.derivative(x));
    }
    return out;
}

EmpiricalDensity make_histogram(const std::vector<std::vector<double>>& values, const HistogramSpec& spec)
{
    spec.validate();
    const int nb = spec.bins();
    const std::size_t s = values.size();
    std::size_t total = 0;
    for (const auto& v : values) total += v.size();
    if (total < 100) throw DomainError("make_histogram: too few samples (need >= 100 values)");

    EmpiricalDensity out;
    out.bin_edges = spec.edges();
    out.counts.assign(nb, 0);
    out.n_samples = s;

    // per-sample bin lists, so a bootstrap round only touches occupied bins
    std::vector<std::vector<int>> bins_of(s);
    const double w = (spec.hi - spec.lo) / nb;
    for (std::size_t k = 0; k < s; ++k)
        for (double x : values[k]) {
            if (!(x >= spec.lo && x < spec.hi)) continue;
            const int b = std::min(nb - 1, static_cast<int>((x - spec.lo) / w));
            bins_of[k].push_back(b);
            ++out.counts[b];
        }

    auto normalize = [&](const std::vector<std::uint64_t>& c, std::vector<double>& dst) {
        double mean = 0;
        for (auto x : c) mean += static_cast<double>(x);
        mean /= nb;
        dst.resize(nb);
        for (int b = 0; b < nb; ++b) dst[b] = mean > 0 ? c[b] / mean : 0.0;
    };
    normalize(out.counts, out.normalized_values);
    bool any = false;
    for (auto c : out.counts) any = any || c > 0;
    if (!any) throw DomainError("make_histogram: no values inside the window");

    std::vector<double> sum(nb, 0.0), sum2(nb, 0.0), norm;
    std::vector<std::uint64_t> c(nb);
    for (int r = 0; r < spec.bootstrap_rounds; ++r) {
        auto eng = RngStream{spec.seed, static_cast<std::uint64_t>(r)}.engine(0);
        std::uniform_int_distribution<std::size_t> pick(0, s - 1);
        std::fill(c.begin(), c.end(), 0);
        for (std::size_t k = 0; k < s; ++k)
            for (int b : bins_of[pick(eng)]) ++c[b];
        normalize(c, norm);
        for (int b = 0; b < nb; ++b) {
            sum[b] += norm[b];
            sum2[b] += norm[b] * norm[b];
        }
    }
    out.stderr_values.resize(nb);
    const double rr = spec.bootstrap_rounds;
    for (int b = 0; b < nb; ++b) {
        const double m = sum[b] / rr;
        out.stderr_values[b] = std::sqrt(std::max(0.0, (sum2[b] / rr - m * m) * rr / (rr - 1)));
    }
    return out;
}

DensityCurve bin_average(const std::function<double(double)>& f, std::span<const double> edges, std::string label,
                         int sub)
{
    if (edges.size() < 2) throw DomainError("bin_average: need at least one bin");
    if (sub < 2 || sub % 2) throw DomainError("bin_average: sub must be even and >= 2");
    DensityCurve out;
    out.label = std::move(label);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1], h = (b - a) / sub;
        double acc = f(a) + f(b);
        for (int k = 1; k < sub; ++k) acc += (k % 2 ? 4 : 2) * f(a + k * h);
        out.xs.push_back(0.5 * (a + b));
        out.values.push_back(acc * h / 3 / (b - a));
    }
    return out;
}

ComparisonReport compare(const EmpiricalDensity& empirical, const DensityCurve& analytic, double tolerance)
{
    if (!(tolerance > 0)) throw DomainError("compare: tolerance must be positive");
    const auto centers = empirical.centers();
    if (analytic.xs.size() != centers.size() || analytic.values.size() != centers.size())
        throw DomainError("compare: grid mismatch (analytic curve must sit at the bin centers)");
    for (std::size_t i = 0; i < centers.size(); ++i)
        if (std::abs(analytic.xs[i] - centers[i]) > 1e-9 * std::max(1.0, std::abs(centers[i])))
            throw DomainError("compare: grid mismatch (analytic curve must sit at the bin centers)");

    ComparisonReport r;
    r.tolerance_used = tolerance;
    int inside = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double d = std::abs(empirical.normalized_values[i] - analytic.values[i]);
        const double se = empirical.stderr_values.empty() ? 0.0 : empirical.stderr_values[i];
        r.sup_norm = std::max(r.sup_norm, d);
        if (se > 0) {
            r.chi_square += (d / se) * (d / se);
            ++r.dof;
        }
        if (d <= 3 * se || d <= 1e-12) ++inside;
    }
    r.within_3sigma = centers.empty() ? 0.0 : static_cast<double>(inside) / centers.size();
    r.pass = r.sup_norm <= tolerance && (r.dof == 0 || r.chi_square / r.dof <= 2);
    return r;
}

double ks_uniform_distance(std::span<const double> values, double lo, double hi)
{
    if (!(hi > lo)) throw DomainError("ks_uniform_distance: need hi > lo");
    std::vector<double> v;
    for (double x : values)
        if (x >= lo && x <= hi) v.push_back(x);
    if (v.empty()) throw DomainError("ks_uniform_distance: no values inside the window");
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = (v[i] - lo) / (hi - lo);
        d = std::max({d, std::abs((i + 1) / n - f), std::abs(i / n - f)});
    }
    return d;
}

}  // namespace lyap
