#include "lyap/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lyap/error.hpp"

namespace lyap::specfun {

namespace {

constexpr double kBernoulliStirling[] = {
    1.0 / 12.0,           -1.0 / 360.0,         1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,         -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0,   43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

Complex stirling(Complex z)
{
    const double half_log_2pi = 0.9189385332046727418;
    Complex sum = 0.0;
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex pw = inv;
    for (double c : kBernoulliStirling) {
        sum += c * pw;
        pw *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + half_log_2pi + sum;
}

}  // namespace

Complex ln_gamma(Complex z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("ln_gamma: non-finite argument");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw DomainError("ln_gamma: pole at non-positive integer");

    // Upward shift; a sum of principal logs keeps the result on the branch
    // that is continuous in each half-plane.
    Complex shift = 0.0;
    while (z.real() < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return stirling(z) - shift;
}

double digamma(double x)
{
    if (!(x > 0.0)) throw DomainError("digamma: x must be positive");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / (x * x);
    const double series =
        r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12))))));
    return acc + std::log(x) - 0.5 / x - series;
}

double trigamma(double x)
{
    if (!(x > 0.0)) throw DomainError("trigamma: x must be positive");
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double r = 1.0 / (x * x);
    const double series =
        r * (1.0 / 6 - r * (1.0 / 30 - r * (1.0 / 42 - r * (1.0 / 30 - r * (5.0 / 66 - r * (691.0 / 2730 - r * 7.0 / 6))))));
    return acc + 1.0 / x + 0.5 * r + series / x;
}

namespace {

template <class T>
std::complex<T> erfi_taylor(std::complex<T> z)
{
    using L = long double;
    const std::complex<L> zz(static_cast<L>(z.real()), static_cast<L>(z.imag()));
    const std::complex<L> z2 = zz * zz;
    std::complex<L> term = zz;
    std::complex<L> sum = zz;
    const L eps = std::numeric_limits<L>::epsilon() * 0.25L;
    const L peak = std::abs(z2);
    for (int k = 1; k < 1000; ++k) {
        term *= z2 / static_cast<L>(k);
        const std::complex<L> add = term / static_cast<L>(2 * k + 1);
        sum += add;
        if (k > peak && std::abs(add) <= eps * std::abs(sum)) break;
    }
    sum *= 2.0L / std::sqrt(std::numbers::pi_v<L>);
    return {static_cast<T>(sum.real()), static_cast<T>(sum.imag())};
}

// Faddeeva w(z) for Im z >= 0 from its Laplace continued fraction.
template <class T>
std::complex<T> faddeeva_cf(std::complex<T> z)
{
    const T tiny = std::numeric_limits<T>::min() * 1e10;
    const T eps = std::numeric_limits<T>::epsilon();
    std::complex<T> f = z;
    if (f == std::complex<T>(0)) f = tiny;
    std::complex<T> c = f;
    std::complex<T> d = 0;
    int k = 1;
    for (; k < 20000; ++k) {
        const T a = -static_cast<T>(k) / 2;
        d = z + a * d;
        if (d == std::complex<T>(0)) d = tiny;
        c = z + a / c;
        if (c == std::complex<T>(0)) c = tiny;
        d = T(1) / d;
        const std::complex<T> delta = c * d;
        f *= delta;
        if (std::abs(delta - T(1)) < eps) break;
    }
    if (k == 20000) throw NumericalError("erfi: continued fraction did not converge");
    const std::complex<T> i_over_sqrtpi(0, 1 / std::sqrt(std::numbers::pi_v<T>));
    return i_over_sqrtpi / f;
}

}  // namespace

template <class T>
std::complex<T> erfi(std::complex<T> z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("erfi: non-finite argument");
    const bool neg = z.real() < 0;
    if (neg) z = -z;
    const bool conj = z.imag() < 0;
    if (conj) z = std::conj(z);
    const T x = z.real();
    const T y = z.imag();
    const T log_max = std::log(std::numeric_limits<T>::max()) - 2;
    if (x * x - y * y > log_max) throw NumericalError("erfi: exp(z^2) overflows");

    std::complex<T> out;
    if (x < 6 && y < T(1.5)) {
        out = erfi_taylor(z);
    } else {
        // erfi(z) = -i (exp(z^2) w(z) - 1)
        const std::complex<T> e = std::exp(x * x - y * y) * std::polar(T(1), 2 * x * y);
        const std::complex<T> ew = e * faddeeva_cf(z);
        out = {ew.imag(), y == 0 ? T(0) : T(1) - ew.real()};
    }
    if (conj) out = std::conj(out);
    return neg ? -out : out;
}

template std::complex<double> erfi(std::complex<double>);
template std::complex<long double> erfi(std::complex<long double>);

namespace {

struct AiryPair {
    double ai;
    double aip;
};

AiryPair airy_maclaurin(double xd)
{
    using L = long double;
    const L x = xd;
    const L c1 = 0.355028053887817239260063186004183176L;
    const L c2 = 0.258819403792806798405183560189203963L;
    const L x3 = x * x * x;
    // f = sum x^{3k} (1/3)_k 3^k/(3k)!, g = sum x^{3k+1} (2/3)_k 3^k/(3k+1)!
    L tf = 1, tg = x, f = 1, g = x, fp = 0, gp = 1;
    // derivative terms carried separately so x = 0 needs no special case
    L tfp = 0, tgp = 1;
    for (int k = 0; k < 200; ++k) {
        const L a = static_cast<L>(3 * k + 2) * (3 * k + 3);
        const L b = static_cast<L>(3 * k + 3) * (3 * k + 4);
        tfp = tf * x * x * static_cast<L>(3 * k + 3) / a;
        tgp = tg * x * x * static_cast<L>(3 * k + 4) / b;
        tf *= x3 / a;
        tg *= x3 / b;
        f += tf;
        g += tg;
        fp += tfp;
        gp += tgp;
        const L mag = std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp);
        if (k > 3 && mag < 1e-22L) break;
    }
    return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

AiryPair airy_asymptotic(double x)
{
    const double pi = std::numbers::pi;
    const double ax = std::fabs(x);
    const double zeta = 2.0 / 3.0 * ax * std::sqrt(ax);
    // u_k, v_k of the standard Airy asymptotic series
    double u[40], v[40];
    u[0] = 1.0;
    v[0] = 1.0;
    int kmax = 0;
    double last = 1.0;
    for (int k = 1; k < 40; ++k) {
        u[k] = u[k - 1] * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
        v[k] = -(6.0 * k + 1) / (6.0 * k - 1) * u[k];
        const double term = std::fabs(v[k]) / std::pow(zeta, k);
        if (term > last) break;  // past the smallest term
        kmax = k;
        last = term;
        if (term < 1e-17) break;
    }
    if (x > 0) {
        double su = 0, sv = 0, zk = 1;
        for (int k = 0; k <= kmax; ++k) {
            const double sgn = (k % 2) ? -1.0 : 1.0;
            su += sgn * u[k] / zk;
            sv += sgn * v[k] / zk;
            zk *= zeta;
        }
        const double q = std::pow(ax, 0.25);
        const double e = std::exp(-zeta) / (2.0 * std::sqrt(pi));
        return {e / q * su, -q * e * sv};
    }
    double ue = 0, uo = 0, ve = 0, vo = 0, zk = 1;
    for (int k = 0; k <= kmax; ++k) {
        const double sgn = ((k / 2) % 2) ? -1.0 : 1.0;
        if (k % 2 == 0) {
            ue += sgn * u[k] / zk;
            ve += sgn * v[k] / zk;
        } else {
            uo += sgn * u[k] / zk;
            vo += sgn * v[k] / zk;
        }
        zk *= zeta;
    }
    const double q = std::pow(ax, 0.25);
    const double s = std::sin(zeta - pi / 4), c = std::cos(zeta - pi / 4);
    return {(c * ue + s * uo) / (std::sqrt(pi) * q), q * (s * ve - c * vo) / std::sqrt(pi)};
}

AiryPair airy(double x)
{
    if (std::fabs(x) <= 8.0) return airy_maclaurin(x);
    return airy_asymptotic(x);
}

}  // namespace

double airy_ai(double x) { return airy(x).ai; }
double airy_ai_prime(double x) { return airy(x).aip; }

}  // namespace lyap::specfun
