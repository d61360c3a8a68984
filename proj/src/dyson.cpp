#include "lyap/dyson.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "lyap/ensembles.hpp"
#include "lyap/error.hpp"

namespace lyap {

void DysonSpec::validate() const
{
    if (n < 8) throw DomainError("dyson: n must be >= 8");
    if (!(tau > 0) || !std::isfinite(tau)) throw DomainError("dyson: tau must be positive");
    if (!std::isfinite(origin)) throw DomainError("dyson: origin must be finite");
}

std::vector<double> sample_dyson_spectrum(const DysonSpec& spec, std::uint64_t sample_index)
{
    spec.validate();
    auto eng = RngStream{spec.master_seed, sample_index}.engine(0);
    CMatrix g(spec.n, spec.n);
    fill_ginibre(g, eng);
    CMatrix h = (g + g.adjoint()) * std::sqrt(spec.tau / 2);
    for (int i = 0; i < spec.n; ++i) h(i, i) += spec.origin + i;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("dyson: eigensolver failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<double>> sample_dyson_spectra(const DysonSpec& spec, int threads)
{
    spec.validate();
    std::vector<std::vector<double>> out(spec.samples);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t s; (s = next++) < spec.samples;) out[s] = sample_dyson_spectrum(spec, s);
    };
    const int t = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int i = 1; i < t; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return out;
}

std::vector<std::vector<double>> dyson_local_values(const std::vector<std::vector<double>>& spectra)
{
    if (spectra.empty()) throw DomainError("dyson: no spectra");
    const int n = static_cast<int>(spectra.front().size());
    const int k0 = n / 3, k1 = n - n / 3;
    const int nk = k1 - k0;
    if (nk < 4) throw DomainError("dyson: too few central indices");

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(nk);
    for (const auto& s : spectra) {
        if (static_cast<int>(s.size()) != n) throw DomainError("dyson: inconsistent spectrum sizes");
        for (int k = 0; k < nk; ++k) mean(k) += s[k0 + k];
    }
    mean /= static_cast<double>(spectra.size());

    // cubic in u = k - mid for conditioning
    const double mid = 0.5 * (nk - 1);
    Eigen::MatrixXd a(nk, 4);
    for (int k = 0; k < nk; ++k) {
        const double u = k - mid;
        a.row(k) << 1, u, u * u, u * u * u;
    }
    const Eigen::Vector4d c = a.colPivHouseholderQr().solve(mean);
    std::vector<double> center(nk), spacing(nk);
    for (int k = 0; k < nk; ++k) {
        const double u = k - mid;
        center[k] = c(0) + u * (c(1) + u * (c(2) + u * c(3)));
        spacing[k] = c(1) + u * (2 * c(2) + 3 * c(3) * u);
        if (!(spacing[k] > 0)) throw NumericalError("dyson: fitted spacing not positive");
    }

    std::vector<std::vector<double>> out(spectra.size());
    for (std::size_t s = 0; s < spectra.size(); ++s) {
        out[s].reserve(nk);
        for (int k = 0; k < nk; ++k) {
            double x = (spectra[s][k0 + k] - center[k]) / spacing[k];
            x -= std::floor(x + 0.5);
            out[s].push_back(x);
        }
    }
    return out;
}

HistogramSpec dyson_histogram_spec(std::uint64_t seed)
{
    return HistogramSpec{-0.5, 0.5, 1.0 / 21, 400, seed};
}

EmpiricalDensity dyson_local_density(const DysonSpec& spec, int threads)
{
    spec.validate();
    if (spec.samples < 1000) throw DomainError("dyson: need at least 1000 samples");
    return make_histogram(dyson_local_values(sample_dyson_spectra(spec, threads)),
                          dyson_histogram_spec(spec.master_seed));
}

}  // namespace lyap
