#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "lyap/error.hpp"
#include "lyap/specfun.hpp"

using namespace lyap::specfun;
using std::complex;

namespace {

// Reference values from tests/oracles/specfun_oracle.py (mpmath, 50 digits).
struct CRef {
    complex<double> z;
    complex<double> expected;
};

double rel(complex<double> a, complex<double> b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("ln_gamma trivial values")
{
    CHECK(std::abs(ln_gamma(complex<double>(1, 0))) < 1e-15);
    CHECK(std::abs(ln_gamma(complex<double>(5, 0)) - std::log(24.0)) < 1e-14);
    CHECK(std::abs(ln_gamma(complex<double>(0.5, 0)).real() - 0.5 * std::log(std::numbers::pi)) < 1e-14);
}

TEST_CASE("ln_gamma against high-precision oracle")
{
    const CRef refs[] = {
        {{0.5, 3}, {-3.7934504504362231734, 0.30981927108643916606}},
        {{-2.5, 0.75}, {-1.6362270839097973452, -8.5899332984050309441}},
        {{3, -40}, {-52.689155060822636631, -111.4051324154599655}},
        {{0.1, 0.01}, {2.2476658232303512977, -0.10390589166538166232}},
        {{12, 7}, {15.488067340143566241, 17.489250400736751588}},
        {{1, -250}, {-389.01941270658835885, -1131.1502942954479447}},
    };
    for (const auto& r : refs) {
        CAPTURE(r.z);
        const complex<double> got = ln_gamma(r.z);
        // branch and modulus both matter: compare the log itself
        CHECK(std::abs(got - r.expected) < 1e-12 * std::max(1.0, std::abs(r.expected)));
    }
}

TEST_CASE("ln_gamma poles raise")
{
    CHECK_THROWS_AS(ln_gamma(complex<double>(0, 0)), lyap::DomainError);
    CHECK_THROWS_AS(ln_gamma(complex<double>(-3, 0)), lyap::DomainError);
}

TEST_CASE("ln_gamma reflection and recurrence")
{
    const double pi = std::numbers::pi;
    for (double x = -3.7; x < 4.0; x += 0.55) {
        for (double y = -2.5; y <= 2.5; y += 0.8) {
            const complex<double> z(x, y);
            const complex<double> lhs = std::exp(ln_gamma(z) + ln_gamma(1.0 - z));
            const complex<double> rhs = pi / std::sin(pi * z);
            CAPTURE(z);
            CHECK(rel(lhs, rhs) < 1e-9);
            const complex<double> up = std::exp(ln_gamma(z + 1.0));
            CHECK(rel(up, z * std::exp(ln_gamma(z))) < 1e-10);
        }
    }
}

TEST_CASE("ln_gamma imaginary part is continuous along vertical lines")
{
    for (double x : {0.3, 2.0, 9.5}) {
        complex<double> prev = ln_gamma(complex<double>(x, -60));
        for (double y = -60; y <= 60; y += 0.05) {
            const complex<double> cur = ln_gamma(complex<double>(x, y));
            CHECK(std::abs(cur.imag() - prev.imag()) < 0.3);
            prev = cur;
        }
    }
}

TEST_CASE("digamma and trigamma")
{
    CHECK(digamma(1) == doctest::Approx(-0.5772156649015329).epsilon(1e-14));
    CHECK(digamma(2) == doctest::Approx(0.4227843350984671).epsilon(1e-14));
    CHECK(trigamma(1) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-14));

    struct R {
        double x, psi, psi1;
    };
    const R refs[] = {
        {0.001, -1000.5755719318102797, 1000001.6425331958273},
        {0.5, -1.9635100260214234794, 4.9348022005446793094},
        {7.25, 1.9104535268837360284, 0.14787923315893216965},
        {30, 3.3844381326855248766, 0.033895060357739944214},
        {1000, 6.9072551956488120521, 0.0010005001666666333334},
    };
    for (const auto& r : refs) {
        CAPTURE(r.x);
        CHECK(std::abs(digamma(r.x) - r.psi) < 1e-12 * std::max(1.0, std::abs(r.psi)));
        CHECK(std::abs(trigamma(r.x) - r.psi1) < 1e-12 * std::max(1.0, r.psi1));
    }
    for (double x = 0.05; x < 40; x *= 1.37) {
        CAPTURE(x);
        CHECK(std::abs(digamma(x + 1) - digamma(x) - 1 / x) < 1e-12 * std::max(1.0, 1 / x));
        const double h = 1e-5 * x;
        const double fd = (digamma(x + h) - digamma(x - h)) / (2 * h);
        CHECK(std::abs(fd - trigamma(x)) < 1e-6 * std::max(1.0, trigamma(x)));
    }
    CHECK_THROWS_AS(digamma(0), lyap::DomainError);
    CHECK_THROWS_AS(trigamma(-1), lyap::DomainError);
}

TEST_CASE("erfi against Taylor oracle")
{
    CHECK(std::abs(erfi(complex<double>(0, 0))) == 0.0);
    const CRef refs[] = {
        {{1, 0}, {1.650425758797542876, 0}},
        {{0.5, 2}, {0.0047409030312943361045, 1.0035022433130363472}},
        {{3.5, 0.25}, {-3308.4472062040628249, 32860.259367059107498}},
        {{0.2, 7}, {1.3427348252842107248e-23, 1.0}},
        {{8, 1}, {-1.5952414853577614502e+26, -2.667998365819567402e+25}},
        {{-4.44, 3.1}, {504.61811044794428841, 2509.5883474374637136}},
        {{2.2, 1.6}, {2.0440699846045311425, 1.1235423060303272439}},
        {{10.5, -11.2}, {-3.0259832850451151828e-9, -1.0000000087888288664}},
    };
    for (const auto& r : refs) {
        CAPTURE(r.z);
        const complex<double> got = erfi(r.z);
        CHECK(rel(got, r.expected) < 1e-10);
        // tiny real parts must be relatively accurate too
        CHECK(std::abs(got.real() - r.expected.real()) <= 1e-10 * std::abs(r.expected.real()) + 1e-300);
        const complex<long double> zl(r.z.real(), r.z.imag());
        const complex<long double> gl = erfi(zl);
        CHECK(rel(complex<double>(double(gl.real()), double(gl.imag())), r.expected) < 1e-13);
    }
}

TEST_CASE("erfi symmetries, derivative and overflow")
{
    for (double x = -3; x <= 3; x += 0.7) {
        for (double y = -3; y <= 3; y += 0.6) {
            const complex<double> z(x, y);
            CAPTURE(z);
            CHECK(rel(erfi(-z), -erfi(z)) < 1e-14);
            CHECK(rel(erfi(std::conj(z)), std::conj(erfi(z))) < 1e-14);
            const double h = 1e-5;
            const complex<double> fd = (erfi(z + h) - erfi(z - h)) / (2 * h);
            const complex<double> exact = 2 / std::sqrt(std::numbers::pi) * std::exp(z * z);
            CHECK(std::abs(fd - exact) < 1e-6 * std::max(1.0, std::abs(exact)));
        }
    }
    // continuity across the switch between series and continued fraction
    const double d = 1e-9;
    const complex<double> iu(0, 1);
    auto slope = [](complex<double> z) { return 2 / std::sqrt(std::numbers::pi) * std::exp(z * z); };
    for (double x = 0.0; x < 8; x += 0.37) {
        const complex<double> z(x, 1.5);
        const complex<double> jump = erfi(z + iu * d) - erfi(z - iu * d) - 2 * d * iu * slope(z);
        CHECK(std::abs(jump) < 1e-11 * std::abs(erfi(z)));
    }
    for (double y = 0.0; y < 1.5; y += 0.13) {
        const complex<double> z(6, y);
        const complex<double> jump = erfi(z + d) - erfi(z - d) - 2 * d * slope(z);
        CHECK(std::abs(jump) < 1e-11 * std::abs(erfi(z)));
    }
    CHECK_THROWS_AS(erfi(complex<double>(30, 0)), lyap::NumericalError);
}

TEST_CASE("Airy function against Maclaurin oracle")
{
    CHECK(airy_ai(0) == doctest::Approx(0.3550280538878172).epsilon(1e-14));
    CHECK(airy_ai_prime(0) == doctest::Approx(-0.2588194037928068).epsilon(1e-14));
    struct R {
        double x, ai, aip;
    };
    const R refs[] = {
        {-2, 0.22740742820168557599, 0.61825902074169104141},
        {-7.5, 0.32177571638064787527, 0.31880950669855459621},
        {-15, 0.27821749087082892953, 0.27237420430864202083},
        {-19.9, -0.072738820111011394491, 1.1456883090128142864},
        {0.75, 0.17933630547864523361, -0.19317520810437645628},
        {4.5, 0.00033025032351430898366, -0.00071786656755750888869},
        {6, 9.9476943602528895702e-6, -0.000024765200397034954754},
        {12, 1.393184688875360839e-13, -4.854736554985308463e-13},
    };
    for (const auto& r : refs) {
        CAPTURE(r.x);
        CHECK(std::abs(airy_ai(r.x) - r.ai) < 1e-10);
        CHECK(std::abs(airy_ai_prime(r.x) - r.aip) < 1e-10);
    }
}

TEST_CASE("Airy equation residual and continuity")
{
    const double h = 1e-2;
    for (double x = -20; x <= 20; x += 0.173) {
        const double f[5] = {airy_ai(x - 2 * h), airy_ai(x - h), airy_ai(x), airy_ai(x + h), airy_ai(x + 2 * h)};
        const double d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h);
        const double d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h);
        CAPTURE(x);
        CHECK(std::abs(d2 - x * f[2]) < 1e-6);
        CHECK(std::abs(d1 - airy_ai_prime(x)) < 1e-6);
    }
    // series / asymptotic seam
    for (double edge : {-8.0, 8.0}) {
        const double d = 1e-9;
        CHECK(std::abs(airy_ai(edge + d) - airy_ai(edge - d) - 2 * d * airy_ai_prime(edge)) < 1e-12);
        CHECK(std::abs(airy_ai_prime(edge + d) - airy_ai_prime(edge - d) - 2 * d * edge * airy_ai(edge)) < 1e-12);
    }
}
