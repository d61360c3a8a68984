#include "lyap/lyapunov.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "lyap/error.hpp"
#include "lyap/specfun.hpp"

namespace lyap {

std::string to_string(LyapunovMethod method)
{
    switch (method) {
    case LyapunovMethod::QrAccumulation:
        return "qr";
    case LyapunovMethod::HighPrecisionSvd:
        return "highprec-svd";
    case LyapunovMethod::GradedSvd:
        return "graded-svd";
    }
    return "unknown";
}

LyapunovMethod parse_method(std::string_view name)
{
    if (name == "qr") return LyapunovMethod::QrAccumulation;
    if (name == "highprec-svd") return LyapunovMethod::HighPrecisionSvd;
    if (name == "graded-svd") return LyapunovMethod::GradedSvd;
    throw DomainError("unknown method '" + std::string(name) + "' (expected qr, graded-svd or highprec-svd)");
}

namespace {

// Singular values of diag(exp(s)) * T by one-sided Jacobi on the columns of
// (diag(exp(s)) T)^H, each column kept as exp(s_i) * v_i so that the grading never
// over- or underflows. Returns log sigma.
std::vector<double> graded_log_singular_values(const CMatrix& t, const Eigen::VectorXd& s)
{
    const auto n = t.rows();
    CMatrix v = t.adjoint();
    Eigen::VectorXd sc = s;
    auto renormalize = [&](Eigen::Index i) {
        const double nv = v.col(i).norm();
        if (!(nv > 0) || !std::isfinite(nv)) throw NumericalError("graded SVD: degenerate column");
        v.col(i) /= nv;
        sc(i) += std::log(nv);
    };
    for (Eigen::Index i = 0; i < n; ++i) renormalize(i);
    const double tol = 1e-15;
    bool converged = n < 2;
    for (int sweep = 0; sweep < 80 && !converged; ++sweep) {
        converged = true;
        for (Eigen::Index i = 0; i < n - 1; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const Eigen::Index big = sc(i) >= sc(j) ? i : j;
                const Eigen::Index small = big == i ? j : i;
                const std::complex<double> g = v.col(big).dot(v.col(small));
                const double ag = std::abs(g);
                const double nb2 = v.col(big).squaredNorm(), ns2 = v.col(small).squaredNorm();
                if (ag <= tol * std::sqrt(nb2 * ns2)) continue;
                converged = false;
                const double rho = std::exp(sc(small) - sc(big));
                const double zr = (rho * rho * ns2 - nb2) / (2 * ag);  // zeta * rho
                const double tau = (zr >= 0 ? 1.0 : -1.0) / (std::abs(zr) + std::sqrt(rho * rho + zr * zr));
                const double c = 1 / std::sqrt(1 + rho * rho * tau * tau);
                const Eigen::VectorXcd vs = v.col(small) * std::conj(g / ag);
                const Eigen::VectorXcd vb = v.col(big);
                v.col(big) = c * (vb - (tau * rho * rho) * vs);
                v.col(small) = c * (tau * vb + vs);
                renormalize(big);
                renormalize(small);
            }
    }
    if (!converged) throw NumericalError("graded SVD: Jacobi sweeps did not converge");
    return std::vector<double>(sc.data(), sc.data() + n);
}

class QrEngine {
public:
    QrEngine(int n, int interval, bool graded = false)
        : n_(n), interval_(interval), graded_(graded), qr_(n, n), z_(n, n), tmp_(n, n), sums_(Eigen::VectorXd::Zero(n))
    {
        if (graded_) t_ = CMatrix::Identity(n, n);
    }

    void push(const CMatrix& x)
    {
        if (pending_ == 0) {
            z_ = x;
            if (have_q_) {
                z_.applyOnTheRight(qr_.householderQ());
                z_ *= phases_.asDiagonal();
            }
        } else {
            tmp_.noalias() = x * z_;
            z_.swap(tmp_);
        }
        if (++pending_ == interval_) flush();
    }

    void flush()
    {
        if (pending_ == 0) return;
        qr_.compute(z_);
        const auto& r = qr_.matrixQR();
        phases_.resize(n_);
        Eigen::VectorXd logmag(n_);
        for (int j = 0; j < n_; ++j) {
            const std::complex<double> d = r(j, j);
            const double mag = std::abs(d);
            if (!(mag > 0.0) || !std::isfinite(mag)) throw NumericalError("singular factor in QR recursion");
            logmag(j) = std::log(mag);
            phases_(j) = d / mag;  // Q D has a positive R diagonal
        }
        if (graded_) {
            // R_k D T = D' T' with D' = |diag R_k| D and T' = D^-1 U D T, U = |diag R_k|^-1 R_k
            tmp_.setZero();
            for (int i = 0; i < n_; ++i) {
                tmp_(i, i) = 1.0;
                const std::complex<double> w = std::conj(phases_(i)) / std::exp(logmag(i));
                for (int j = i + 1; j < n_; ++j) tmp_(i, j) = w * r(i, j) * std::exp(sums_(j) - sums_(i));
            }
            t_ = tmp_.triangularView<Eigen::UnitUpper>() * t_;
            if (!t_.allFinite()) throw NumericalError("graded accumulation overflowed");
        }
        sums_ += logmag;
        have_q_ = true;
        pending_ = 0;
    }

    std::vector<double> exponents(int m)
    {
        flush();
        std::vector<double> out = graded_ ? graded_log_singular_values(t_, sums_)
                                          : std::vector<double>(sums_.data(), sums_.data() + n_);
        for (double& v : out) v /= m;
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    int n_;
    int interval_;
    bool graded_;
    int pending_ = 0;
    bool have_q_ = false;
    Eigen::HouseholderQR<CMatrix> qr_;
    CMatrix z_;
    CMatrix tmp_;
    Eigen::VectorXcd phases_;
    Eigen::VectorXd sums_;
    CMatrix t_;
};

}  // namespace

namespace {

LyapunovSpectrum run_engine(const ProductSpec& spec, std::uint64_t sample_index, std::uint64_t master_seed,
                            const QrOptions& opts, LyapunovMethod method)
{
    spec.validate();
    if (opts.reorth_interval < 1) throw DomainError("reorth_interval must be >= 1");
    if (method == LyapunovMethod::HighPrecisionSvd)
        throw DomainError("the high-precision oracle is not a simulation method");
    FactorGenerator gen(spec, sample_index, master_seed);
    QrEngine engine(spec.n, opts.reorth_interval, method == LyapunovMethod::GradedSvd);
    CMatrix x(spec.n, spec.n);
    for (int k = 0; k < spec.m; ++k) {
        gen.next(x);
        engine.push(x);
    }
    LyapunovSpectrum s;
    s.lambdas = engine.exponents(spec.m);
    s.n = spec.n;
    s.m = spec.m;
    s.method = method;
    s.sample_index = sample_index;
    s.master_seed = master_seed;
    return s;
}

std::vector<double> engine_exponents(std::span<const CMatrix> factors, const QrOptions& opts, bool graded)
{
    if (factors.empty()) throw DomainError("no factors");
    if (opts.reorth_interval < 1) throw DomainError("reorth_interval must be >= 1");
    const auto n = static_cast<int>(factors.front().rows());
    QrEngine engine(n, opts.reorth_interval, graded);
    for (const auto& x : factors) {
        if (x.rows() != n || x.cols() != n) throw DomainError("factor shape mismatch");
        engine.push(x);
    }
    return engine.exponents(static_cast<int>(factors.size()));
}

}  // namespace

LyapunovSpectrum qr_lyapunov(const ProductSpec& spec, std::uint64_t sample_index, std::uint64_t master_seed,
                             const QrOptions& opts)
{
    return run_engine(spec, sample_index, master_seed, opts, LyapunovMethod::QrAccumulation);
}

LyapunovSpectrum graded_lyapunov(const ProductSpec& spec, std::uint64_t sample_index, std::uint64_t master_seed,
                                 const QrOptions& opts)
{
    return run_engine(spec, sample_index, master_seed, opts, LyapunovMethod::GradedSvd);
}

LyapunovSpectrum lyapunov_spectrum(const ProductSpec& spec, std::uint64_t sample_index, std::uint64_t master_seed,
                                   LyapunovMethod method, const QrOptions& opts)
{
    return run_engine(spec, sample_index, master_seed, opts, method);
}

std::vector<double> qr_exponents(std::span<const CMatrix> factors, const QrOptions& opts)
{
    return engine_exponents(factors, opts, false);
}

std::vector<double> graded_exponents(std::span<const CMatrix> factors, const QrOptions& opts)
{
    return engine_exponents(factors, opts, true);
}

std::vector<LyapunovSpectrum> simulate_spectra(const ProductSpec& spec, std::uint64_t master_seed,
                                               std::uint64_t first, std::uint64_t count, int threads,
                                               const QrOptions& opts, LyapunovMethod method)
{
    spec.validate();
    std::vector<LyapunovSpectrum> out(count);
    const int nt = std::max(1, threads);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        try {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= count || failed) return;
                out[i] = run_engine(spec, first + i, master_seed, opts, method);
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };
    if (nt == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

GaussianTheory gaussian_theory(int j, int m)
{
    if (j < 1 || m < 1) throw DomainError("gaussian_theory: need j >= 1 and m >= 1");
    return {j, 0.5 * specfun::digamma(j), std::sqrt(specfun::trigamma(j) / (4.0 * m))};
}

double wsr(int j, int m)
{
    if (j < 2) throw DomainError("wsr: need j >= 2");
    const auto a = gaussian_theory(j, m);
    const auto b = gaussian_theory(j - 1, m);
    return (a.sigma + b.sigma) / (2.0 * (a.mean - b.mean));
}

double wsr_asymptotic(int j, int m)
{
    if (j < 1 || m < 1) throw DomainError("wsr_asymptotic: need j, m >= 1");
    return std::sqrt(static_cast<double>(j) / m);
}

double gaussian_density(double lambda, int n, int m)
{
    if (n < 1 || m < 1) throw DomainError("gaussian_density: need n, m >= 1");
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) {
        const auto g = gaussian_theory(j, m);
        const double u = (lambda - g.mean) / g.sigma;
        acc += std::exp(-0.5 * u * u) / (std::sqrt(2.0 * std::numbers::pi) * g.sigma);
    }
    return acc;
}

int recommended_digits(int n, int m)
{
    return static_cast<int>(std::ceil(2.0 * m * (specfun::digamma(n) + 1.0) / std::log(10.0)));
}

}  // namespace lyap
