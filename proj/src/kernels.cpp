#include "lyap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "lyap/error.hpp"
#include "lyap/specfun.hpp"

namespace lyap {

using Complex = std::complex<double>;
using LComplex = std::complex<long double>;
constexpr double kPi = std::numbers::pi;

void QuadratureConfig::validate() const
{
    if (max_t < 0) throw DomainError("max_t must be positive (or 0 for automatic)");
    if (nodes_per_unit < 8) throw DomainError("nodes_per_unit must be >= 8");
    if (contour_shift < 0) throw DomainError("contour_shift must be >= 0");
    if (!(tol > 0)) throw DomainError("tol must be positive");
}

void BulkKernelParams::validate() const
{
    if (!(a > 0) || !std::isfinite(a)) throw DomainError("bulk kernel: a must be > 0");
    if (!(p > 0 && p < 1)) throw DomainError("bulk kernel: p must lie in (0, 1)");
}

void DensityCurve::validate(double tol) const
{
    if (xs.size() != values.size()) throw DomainError("density curve: size mismatch");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw DomainError("density curve: grid not strictly increasing");
    for (double v : values)
        if (!std::isfinite(v) || v < -tol) throw NumericalError("density curve: negative or non-finite value");
}

DensityCurve tabulate(std::string label, const std::vector<double>& xs, const std::function<double(double)>& f)
{
    DensityCurve c;
    c.label = std::move(label);
    c.xs = xs;
    c.values.reserve(xs.size());
    for (double x : xs) c.values.push_back(f(x));
    return c;
}

std::vector<double> linear_grid(double lo, double hi, int count)
{
    if (count < 1) throw DomainError("grid count must be >= 1");
    if (count == 1) return {lo};
    if (!(hi > lo)) throw DomainError("grid needs max > min");
    std::vector<double> xs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) xs[i] = lo + (hi - lo) * i / (count - 1);
    xs.back() = hi;
    return xs;
}

// ---------------------------------------------------------------- finite

namespace {

struct FiniteIntegrand {
    int j, n, m;
    double lg_j, lg_k;

    double sinhc(double u) const
    {
        const double x = kPi * u;
        return std::abs(x) < 1e-8 ? 1.0 : std::sinh(x) / x;
    }

    // log of the integrand without y^{iu}
    Complex log_core(double u) const
    {
        const Complex a = specfun::ln_gamma(Complex(j, -u)) - lg_j;
        const Complex b = specfun::ln_gamma(Complex(n - j + 1, u)) - lg_k;
        return static_cast<double>(m + 1) * a + b;
    }

    double log_abs(double u) const
    {
        const double s = std::abs(kPi * u) < 1e-8 ? 0.0 : std::log(std::abs(sinhc(u)));
        return s + log_core(u).real();
    }
};

}  // namespace

double finite_G_log(int j, double log_y, int n, int m, const QuadratureConfig& quad)
{
    quad.validate();
    if (n < 1 || m < 1) throw DomainError("finite_G: need n, m >= 1");
    if (j < 1 || j > n) throw DomainError("finite_G: need 1 <= j <= n");
    if (!std::isfinite(log_y)) throw DomainError("finite_G: y must be positive and finite");

    const FiniteIntegrand f{j, n, m, std::lgamma(static_cast<double>(j)), std::lgamma(static_cast<double>(n - j + 1))};
    const double log_tol = std::log(quad.tol);

    double umax = quad.max_t;
    if (umax == 0.0) {
        umax = 1.0 / m;
        while (std::max(f.log_abs(umax), f.log_abs(-umax)) > log_tol - 12.0) umax *= 1.5;
    }
    // integrand decays like exp(-M pi |u| / 2)
    const double rate = std::max(0.5 * kPi * m, 1.0);
    const double tail = std::exp(std::max(f.log_abs(umax), f.log_abs(-umax))) / rate;
    if (tail > quad.tol) throw NumericalError("finite_G: truncation tail exceeds tolerance");

    // Trapezoid step: the aliased copies of G_j(e^s) sit 2 pi / h away in s.
    const double mu = (m + 1) * specfun::digamma(j) - specfun::digamma(n - j + 1);
    const double sd = std::sqrt((m + 1) * specfun::trigamma(j) + specfun::trigamma(n - j + 1) + 1.0);
    const double period = 2.0 * (std::abs(log_y - mu) + 12.0 * sd + 40.0);
    const double h = std::min(2.0 * kPi / period, 1.0 / quad.nodes_per_unit);
    const long steps = static_cast<long>(std::ceil(umax / h));
    if (steps > 50'000'000) throw NumericalError("finite_G: node budget exceeded");

    // u and -u pair up to a real part: Re[F(u)] + Re[F(-u)]
    double acc = 1.0;  // u = 0
    for (long k = 1; k <= steps; ++k) {
        const double u = k * h;
        const double sh = f.sinhc(u);
        const Complex lp = f.log_core(u) + Complex(0, u * log_y);
        const Complex lm = f.log_core(-u) + Complex(0, -u * log_y);
        acc += sh * (std::exp(lp).real() + std::exp(lm).real());
    }
    return acc * h / (2.0 * kPi);
}

double finite_G(int j, double y, int n, int m, const QuadratureConfig& quad)
{
    if (!(y > 0) || !std::isfinite(y)) throw DomainError("finite_G: y must be positive and finite");
    return finite_G_log(j, std::log(y), n, m, quad);
}

double finite_kernel_lambda(double lx, double ly, int n, int m, const QuadratureConfig& quad)
{
    const double log_y = 2.0 * m * ly;
    const double d = 2.0 * m * (lx - ly);
    if (std::abs(d) * n > 700.0) throw NumericalError("finite_kernel: (x/y)^j exceeds the log-domain budget");
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) acc += std::exp(j * d) * finite_G_log(j, log_y, n, m, quad);
    return 2.0 * m * acc;
}

double finite_kernel(double x, double y, int n, int m, const QuadratureConfig& quad)
{
    if (!(x > 0) || !(y > 0)) throw DomainError("finite_kernel: x, y must be positive");
    const double lx = std::log(x), ly = std::log(y);
    if (std::abs(lx) > 700.0) throw NumericalError("finite_kernel: 1/x exceeds the log-domain budget");
    // K = (1/x) sum (x/y)^j G_j(y), and the lambda kernel carries a factor 2M x.
    return finite_kernel_lambda(lx / (2.0 * m), ly / (2.0 * m), n, m, quad) / (2.0 * m * x);
}

double finite_density(double lambda, int n, int m, const QuadratureConfig& quad)
{
    return finite_kernel_lambda(lambda, lambda, n, m, quad);
}

// ---------------------------------------------------------------- bulk

namespace {

using L = long double;

L bulk_sum_impl(L xi, L zeta, L ap, L tol)
{
    const L s = std::sqrt(2 * ap);
    const L x0 = 0.5L * std::numbers::pi_v<L> * s;
    const L x02 = x0 * x0;
    const L log_max = std::log(std::numeric_limits<L>::max()) - 10;
    if (x02 > log_max) throw NumericalError("bulk_kernel_sum: erfi overflows; use the Poisson form");
    // (j - xi)^2 / (2 ap) bounds how far a term sits below the largest one,
    // and the largest one exceeds the sum by at most exp(x0^2).
    const L reach = std::sqrt(2 * ap * (x02 + std::log(1 / tol) + 8));
    if (reach > 1e6L) throw NumericalError("bulk_kernel_sum: truncation bound not met");
    const long jlo = static_cast<long>(std::floor(xi - reach));
    const long jhi = static_cast<long>(std::ceil(xi + reach));
    const L d = xi - zeta;
    const L peak = (xi * xi - zeta * zeta) / (2 * ap);
    if (std::abs(peak) + x02 > log_max) throw NumericalError("bulk_kernel_sum: prefactor overflows");
    L acc = 0;
    for (long j = jlo; j <= jhi; ++j) {
        const L y = (zeta - j) / s;
        const L re = specfun::erfi(LComplex(x0, y)).real();
        acc += std::exp(j * d / ap) * re;
    }
    return acc / (2 * std::numbers::pi_v<L> * ap);
}

L bulk_poisson_impl(L xi, L zeta, L ap, L tol)
{
    const L pi = std::numbers::pi_v<L>;
    const L d = zeta - xi;
    const L log_pref = (xi * xi - zeta * zeta) / (2 * ap);
    if (std::abs(log_pref) > std::log(std::numeric_limits<L>::max()) - 10)
        throw NumericalError("bulk_kernel_poisson: prefactor overflows");
    // n = 0: e^{i pi d} / (i d), real part sin(pi d)/d with the removable point at d = 0
    L acc = d == 0 ? pi : std::sin(pi * d) / d;
    // k and 1 - k share the weight exp(-2 pi^2 ap k (k - 1))
    for (long n = 1;; ++n) {
        const L w = std::exp(-2 * pi * pi * ap * n * (n - 1));
        for (long k : {n, 1 - n}) {
            if (k == 0) continue;
            const LComplex num = std::polar(w, pi * (zeta + (2 * k - 1) * xi));
            const LComplex den(2 * pi * ap * k, d);
            acc += (num / den).real();
        }
        if (n > 1 && w / (2 * pi * ap * (n - 1)) < tol) break;
        if (n > 10'000'000) throw NumericalError("bulk_kernel_poisson: truncation bound not met");
    }
    return std::exp(log_pref) * acc / pi;
}

}  // namespace

double bulk_kernel_sum(double xi, double zeta, const BulkKernelParams& params, double tol)
{
    params.validate();
    return static_cast<double>(bulk_sum_impl(xi, zeta, params.ap(), tol));
}

double bulk_kernel_poisson(double xi, double zeta, const BulkKernelParams& params, double tol)
{
    params.validate();
    return static_cast<double>(bulk_poisson_impl(xi, zeta, params.ap(), tol));
}

double bulk_density_ap(double xi, double ap)
{
    if (!(ap > 0) || !std::isfinite(ap)) throw DomainError("bulk density: ap must be > 0");
    const long double v = ap < 0.5 ? bulk_sum_impl(xi, xi, ap, 1e-14L) : bulk_poisson_impl(xi, xi, ap, 1e-14L);
    return static_cast<double>(v);
}

double bulk_density(double xi, const BulkKernelParams& params)
{
    params.validate();
    return bulk_density_ap(xi, params.ap());
}

double delta_p(int n, double p, double a)
{
    if (!(p > 0 && p < 1)) throw DomainError("delta_p: p must lie in (0, 1)");
    if (n < 1) throw DomainError("delta_p: n must be >= 1");
    const double np = n * p;
    return np - std::floor(np) + 0.5 - a * p * std::log((1 - p) / p);
}

double sine_kernel(double xi, double zeta)
{
    const double d = kPi * (xi - zeta);
    return d == 0 ? 1.0 : std::sin(d) / d;
}

double picket_comb_density(double xi, double ap)
{
    if (!(ap > 0)) throw DomainError("picket comb: ap must be > 0");
    const double reach = std::sqrt(2 * ap * 40) + 1;
    double acc = 0;
    for (long k = static_cast<long>(std::floor(xi - reach)); k <= static_cast<long>(std::ceil(xi + reach)); ++k)
        acc += std::exp(-(xi - k) * (xi - k) / (2 * ap));
    return acc / std::sqrt(2 * kPi * ap);
}

// ---------------------------------------------------------------- soft edge

double soft_edge_position_log(int n, int m)
{
    if (n < 1 || m < 1) throw DomainError("soft_edge_position_log: need n, m >= 1");
    return m * std::log(static_cast<double>(n)) + (m + 1.0) * std::log(m + 1.0) - m * std::log(static_cast<double>(m));
}

double soft_default_shift(double zeta, double a)
{
    const double c = 1 - std::log(a) + 1 / (2 * a) + zeta / std::cbrt(a * a);
    return std::min({0.5 * a, 0.5 * std::sqrt(a), 0.5 / std::max(std::abs(c), 1e-12)});
}

namespace {

struct SoftIntegrand {
    double a, c, delta_rel;  // delta_rel = (xi - zeta)/a^{2/3}

    Complex log_value(Complex t) const
    {
        const Complex iu(0, 1);
        const Complex w = std::exp(-iu * t / a - delta_rel);
        return (iu * t - 1.0) * std::log(1.0 - w) - specfun::ln_gamma(1.0 + iu * t) - t * t / (2 * a) - iu * t * c;
    }
};

double soft_integrate(const SoftIntegrand& f, double delta, double h, double smax_hint, double tol)
{
    const double log_tol = std::log(tol) - 12;
    auto edge = [&](double s) {
        double mx = -std::numeric_limits<double>::infinity();
        for (double q : {1.0, 1.07, 1.15, 1.25})
            for (double sg : {-1.0, 1.0}) mx = std::max(mx, f.log_value(Complex(sg * q * s, -delta)).real());
        return mx;
    };
    double smax = smax_hint;
    while (edge(smax) > log_tol) {
        smax *= 1.25;
        if (smax > 1e7) throw NumericalError("soft_kernel: integrand does not decay");
    }
    const long steps = static_cast<long>(std::ceil(smax / h));
    if (steps > 50'000'000) throw NumericalError("soft_kernel: node budget exceeded");
    Complex acc = std::exp(f.log_value(Complex(0, -delta)));
    for (long k = 1; k <= steps; ++k) {
        const double s = k * h;
        acc += std::exp(f.log_value(Complex(s, -delta))) + std::exp(f.log_value(Complex(-s, -delta)));
    }
    return acc.real() * h / (2 * kPi * std::cbrt(f.a * f.a));
}

}  // namespace

double soft_kernel(double xi, double zeta, const SoftKernelParams& params, const QuadratureConfig& quad)
{
    quad.validate();
    const double a = params.a;
    if (!(a > 0) || !std::isfinite(a)) throw DomainError("soft_kernel: a must be > 0");
    const SoftIntegrand f{a, 1 - std::log(a) + 1 / (2 * a) + zeta / std::cbrt(a * a), (xi - zeta) / std::cbrt(a * a)};

    // The branch points of (1 - w)^{it-1} lie on Im t = a (xi - zeta)/a^{2/3};
    // the contour runs below them and below the real axis.
    const double floor_shift = std::max(0.0, -a * f.delta_rel);
    const double delta0 = quad.contour_shift > 0 ? quad.contour_shift : soft_default_shift(zeta, a);
    if (quad.contour_shift > 0 && quad.contour_shift <= floor_shift)
        throw NumericalError("soft_kernel: contour crosses the branch cut");

    auto run = [&](double d0) {
        const double d = d0 + floor_shift;
        const double h = d0 / quad.nodes_per_unit;
        const double smax = quad.max_t > 0 ? quad.max_t : std::sqrt(2 * a * (40 + d * d / (2 * a))) + 3 * d;
        return soft_integrate(f, d, h, smax, quad.tol);
    };
    const double value = run(delta0);
    if (quad.check_contour) {
        for (double scale : {0.5, 2.0}) {
            const double other = run(delta0 * scale);
            if (std::abs(other - value) > 1e3 * quad.tol * std::max(1.0, std::abs(value)))
                throw NumericalError("soft_kernel: result depends on the contour shift");
        }
    }
    return value;
}

double soft_density(double xi, const SoftKernelParams& params, const QuadratureConfig& quad)
{
    return soft_kernel(xi, xi, params, quad);
}

// ---------------------------------------------------------------- Airy

double airy_kernel(double xi, double zeta)
{
    const double c = std::cbrt(2.0);
    const double u = c * xi, v = c * zeta;
    if (std::abs(u - v) < 1e-6) {
        const double mid = 0.5 * (u + v);
        const double ai = specfun::airy_ai(mid), aip = specfun::airy_ai_prime(mid);
        return c * (aip * aip - mid * ai * ai);
    }
    const double au = specfun::airy_ai(u), apu = specfun::airy_ai_prime(u);
    const double av = specfun::airy_ai(v), apv = specfun::airy_ai_prime(v);
    return c * (au * apv - apu * av) / (u - v);
}

double airy_density(double xi) { return airy_kernel(xi, xi); }

}  // namespace lyap
