#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <mutex>
#include <vector>

#include "lyap/error.hpp"
#include "lyap/lyapunov.hpp"

namespace lyap {

namespace {

using Real = boost::multiprecision::mpfr_float;

struct Cx {
    Real re;
    Real im;
};

Cx mul(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

// Column-major n x n matrix.
using MpMatrix = std::vector<Cx>;

MpMatrix to_mp(const CMatrix& x)
{
    const auto n = static_cast<std::size_t>(x.rows());
    MpMatrix out(n * n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) out[c * n + r] = {Real(x(r, c).real()), Real(x(r, c).imag())};
    return out;
}

MpMatrix matmul(const MpMatrix& a, const MpMatrix& b, std::size_t n)
{
    MpMatrix out(n * n, Cx{Real(0), Real(0)});
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t k = 0; k < n; ++k) {
            const Cx& bk = b[c * n + k];
            for (std::size_t r = 0; r < n; ++r) {
                const Cx p = mul(a[k * n + r], bk);
                out[c * n + r].re += p.re;
                out[c * n + r].im += p.im;
            }
        }
    return out;
}

// One-sided Jacobi: orthogonalize the columns, singular values are column norms.
std::vector<Real> singular_values(MpMatrix a, std::size_t n, const Real& tol)
{
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Real alpha(0), beta(0), gre(0), gim(0);
                for (std::size_t r = 0; r < n; ++r) {
                    const Cx& ap = a[p * n + r];
                    const Cx& aq = a[q * n + r];
                    alpha += ap.re * ap.re + ap.im * ap.im;
                    beta += aq.re * aq.re + aq.im * aq.im;
                    gre += ap.re * aq.re + ap.im * aq.im;  // conj(a_p) . a_q
                    gim += ap.re * aq.im - ap.im * aq.re;
                }
                const Real g = sqrt(gre * gre + gim * gim);
                if (g == 0 || g <= tol * sqrt(alpha * beta)) continue;
                rotated = true;
                const Cx phase{gre / g, -gim / g};  // exp(-i phi)
                const Real zeta = (beta - alpha) / (2 * g);
                const Real t = (zeta >= 0 ? Real(1) : Real(-1)) / (abs(zeta) + sqrt(1 + zeta * zeta));
                const Real c = 1 / sqrt(1 + t * t);
                const Real s = c * t;
                for (std::size_t r = 0; r < n; ++r) {
                    const Cx ap = a[p * n + r];
                    const Cx aq = mul(a[q * n + r], phase);
                    a[p * n + r] = {c * ap.re - s * aq.re, c * ap.im - s * aq.im};
                    a[q * n + r] = {s * ap.re + c * aq.re, s * ap.im + c * aq.im};
                }
            }
        }
        if (!rotated) {
            std::vector<Real> sv(n);
            for (std::size_t c = 0; c < n; ++c) {
                Real acc(0);
                for (std::size_t r = 0; r < n; ++r) acc += a[c * n + r].re * a[c * n + r].re + a[c * n + r].im * a[c * n + r].im;
                sv[c] = sqrt(acc);
            }
            return sv;
        }
    }
    throw NumericalError("high-precision Jacobi SVD did not converge");
}

std::mutex precision_mutex;

}  // namespace

std::vector<double> highprec_exponents(std::span<const CMatrix> factors, int digits)
{
    if (factors.empty()) throw DomainError("highprec_exponents: no factors");
    if (digits < 20) throw DomainError("highprec_exponents: need at least 20 digits");
    const auto n = static_cast<std::size_t>(factors.front().rows());
    const auto m = static_cast<double>(factors.size());

    // mpfr_float's default precision is process-global in this Boost version.
    std::lock_guard lock(precision_mutex);
    const unsigned saved = Real::default_precision();
    Real::default_precision(static_cast<unsigned>(digits));
    struct Restore {
        unsigned v;
        ~Restore() { Real::default_precision(v); }
    } restore{saved};

    MpMatrix y = to_mp(factors.front());
    for (std::size_t k = 1; k < factors.size(); ++k) {
        if (static_cast<std::size_t>(factors[k].rows()) != n) throw DomainError("factor shape mismatch");
        y = matmul(to_mp(factors[k]), y, n);
    }
    const Real tol = pow(Real(10), -(digits - 10));
    std::vector<Real> sv = singular_values(std::move(y), n, tol);
    std::sort(sv.begin(), sv.end());
    if (sv.front() <= 0 || sv.front() <= sv.back() * pow(Real(10), -(digits - 15)))
        throw NumericalError("precision insufficient: smallest singular value lost in rounding");
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<double>(log(sv[j])) / m;
    return out;
}

LyapunovSpectrum exact_lyapunov_highprec(const ProductSpec& spec, std::uint64_t sample_index,
                                         std::uint64_t master_seed, int digits)
{
    spec.validate();
    if (spec.n > 8 || spec.m > 64) throw DomainError("high-precision oracle limited to n <= 8, m <= 64");
    const auto factors = product_factors(spec, sample_index, master_seed);
    std::vector<CMatrix> mats;
    mats.reserve(factors.size());
    for (const auto& f : factors) mats.push_back(f.entries);
    LyapunovSpectrum s;
    s.lambdas = highprec_exponents(mats, digits);
    s.n = spec.n;
    s.m = spec.m;
    s.method = LyapunovMethod::HighPrecisionSvd;
    s.sample_index = sample_index;
    s.master_seed = master_seed;
    return s;
}

}  // namespace lyap
