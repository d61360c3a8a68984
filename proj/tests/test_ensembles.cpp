#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>

#include "lyap/ensembles.hpp"
#include "lyap/error.hpp"

using namespace lyap;

TEST_CASE("Ginibre entries have unit variance")
{
    ProductSpec spec;
    spec.n = 2;
    spec.m = 1;
    double acc = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const auto f = sample_factor(spec, 1, RngStream{3, static_cast<std::uint64_t>(i)});
        acc += std::norm(f.entries(0, 0));
    }
    CHECK(std::abs(acc / draws - 1.0) < 0.02);
}

TEST_CASE("Bernoulli support and second moment")
{
    // The nine support points enumerated: 0, four of modulus 1, four of modulus sqrt 2.
    double exact = 0;
    for (int re = -1; re <= 1; ++re)
        for (int im = -1; im <= 1; ++im) exact += (re * re + im * im) / 9.0;
    CHECK(exact == doctest::Approx(4.0 / 3.0));

    ProductSpec spec;
    spec.kind = EnsembleKind::Bernoulli;
    spec.n = 8;
    spec.m = 1;
    spec.normalize_variance = false;
    std::set<std::pair<int, int>> seen;
    double acc = 0;
    const int draws = 4000;
    for (int i = 0; i < draws; ++i) {
        const auto f = sample_factor(spec, 1, RngStream{5, static_cast<std::uint64_t>(i)});
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) {
                const auto z = f.entries(r, c);
                REQUIRE(z.real() == std::round(z.real()));
                REQUIRE(z.imag() == std::round(z.imag()));
                REQUIRE(std::abs(z.real()) <= 1);
                REQUIRE(std::abs(z.imag()) <= 1);
                seen.insert({static_cast<int>(z.real()), static_cast<int>(z.imag())});
                acc += std::norm(z);
            }
    }
    CHECK(seen.size() == 9);
    const double mean = acc / (draws * 64.0);
    CHECK(std::abs(mean - exact) < 0.01);

    spec.normalize_variance = true;
    acc = 0;
    for (int i = 0; i < draws; ++i) acc += sample_factor(spec, 1, RngStream{5, static_cast<std::uint64_t>(i)}).entries.squaredNorm();
    CHECK(std::abs(acc / (draws * 64.0) - 1.0) < 0.01);
}

TEST_CASE("CorrelatedSum first factor is the Ginibre draw")
{
    ProductSpec g;
    g.n = 3;
    g.m = 4;
    ProductSpec c = g;
    c.kind = EnsembleKind::CorrelatedSum;
    const RngStream stream{9, 2};
    CHECK(sample_factor(c, 1, stream).entries == sample_factor(g, 1, stream).entries);
    CHECK(sample_factor(c, 2, stream).entries != sample_factor(g, 2, stream).entries);
}

TEST_CASE("Factor streams are deterministic and order independent")
{
    for (auto kind : {EnsembleKind::Ginibre, EnsembleKind::Bernoulli, EnsembleKind::CorrelatedSum, EnsembleKind::DmpkStep}) {
        ProductSpec spec;
        spec.kind = kind;
        spec.n = 4;
        spec.m = 6;
        if (kind == EnsembleKind::DmpkStep) {
            spec.dt = 0.01;
            spec.gamma = 0.5;
        }
        CAPTURE(to_string(kind));
        const auto a = product_factors(spec, 17, 123);
        const auto b = product_factors(spec, 17, 123);
        REQUIRE(a.size() == 6);
        for (int k = 5; k >= 0; --k) {
            CHECK(a[k].entries == b[k].entries);
            CHECK(a[k].factor_index == k + 1);
            // stateless sampling reproduces the sequential generator bit for bit
            CHECK(sample_factor(spec, k + 1, RngStream{123, 17}).entries == a[k].entries);
        }
        CHECK(product_factors(spec, 18, 123)[0].entries != a[0].entries);
        CHECK(product_factors(spec, 17, 124)[0].entries != a[0].entries);
    }
    ProductSpec one;
    one.n = 3;
    one.m = 1;
    CHECK(product_factors(one, 0, 1).at(0).entries == sample_factor(one, 1, RngStream{1, 0}).entries);
}

TEST_CASE("DmpkStep approaches the identity as dt vanishes")
{
    ProductSpec spec;
    spec.kind = EnsembleKind::DmpkStep;
    spec.n = 5;
    spec.m = 2;
    spec.gamma = 0.7;
    for (double dt : {1e-2, 1e-6, 1e-12}) {
        spec.dt = dt;
        const auto x = sample_factor(spec, 1, RngStream{1, 1}).entries;
        const double dev = (x - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff();
        CHECK(dev < 10 * std::sqrt(dt));
    }
}

TEST_CASE("Ginibre second moments are isotropic and circular")
{
    ProductSpec spec;
    spec.n = 3;
    spec.m = 1;
    const int draws = 20000;
    Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(9, 9);
    Eigen::MatrixXcd pseudo = Eigen::MatrixXcd::Zero(9, 9);
    for (int i = 0; i < draws; ++i) {
        const auto x = sample_factor(spec, 1, RngStream{77, static_cast<std::uint64_t>(i)}).entries;
        const Eigen::Map<const Eigen::VectorXcd> v(x.data(), 9);
        cov += v * v.adjoint();
        pseudo += v * v.transpose();
    }
    cov /= draws;
    pseudo /= draws;
    const double tol = 4.0 / std::sqrt(draws);
    CHECK((cov - Eigen::MatrixXcd::Identity(9, 9)).cwiseAbs().maxCoeff() < tol);
    CHECK(pseudo.cwiseAbs().maxCoeff() < tol);

    // A fixed unitary leaves the covariance unchanged.
    Eigen::HouseholderQR<CMatrix> qr(CMatrix::Random(3, 3));
    const CMatrix u = qr.householderQ();
    Eigen::MatrixXcd rot = Eigen::MatrixXcd::Zero(9, 9);
    for (int i = 0; i < draws; ++i) {
        const CMatrix x = u * sample_factor(spec, 1, RngStream{78, static_cast<std::uint64_t>(i)}).entries;
        const Eigen::Map<const Eigen::VectorXcd> v(x.data(), 9);
        rot += v * v.adjoint();
    }
    rot /= draws;
    CHECK((rot - Eigen::MatrixXcd::Identity(9, 9)).cwiseAbs().maxCoeff() < tol);
}

TEST_CASE("CorrelatedSum has one-step memory")
{
    ProductSpec spec;
    spec.kind = EnsembleKind::CorrelatedSum;
    spec.n = 2;
    spec.m = 5;
    const int draws = 20000;
    std::complex<double> c1 = 0, c2 = 0;
    double var = 0;
    for (int i = 0; i < draws; ++i) {
        const auto f = product_factors(spec, static_cast<std::uint64_t>(i), 31);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                c1 += f[2].entries(r, c) * std::conj(f[3].entries(r, c));
                c2 += f[2].entries(r, c) * std::conj(f[4].entries(r, c));
                var += std::norm(f[3].entries(r, c));
            }
    }
    const double n = draws * 4.0;
    // X_j = (A_j + A_{j-1})/sqrt 2 shares A_j with X_{j+1}
    CHECK(std::abs(c1 / n - 0.5) < 4 / std::sqrt(n));
    CHECK(std::abs(c2 / n) < 4 / std::sqrt(n));
    CHECK(std::abs(var / n - 1.0) < 4 * std::sqrt(2.0 / n));
}

TEST_CASE("ProductSpec validation")
{
    ProductSpec s;
    s.n = 0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.n = 2;
    s.m = 0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.m = 3;
    s.dt = 0.1;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.kind = EnsembleKind::DmpkStep;
    CHECK_NOTHROW(s.validate());
    s.dt = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    ProductSpec g;
    g.m = 3;
    CHECK_THROWS_AS(sample_factor(g, 0, {}), DomainError);
    CHECK_THROWS_AS(sample_factor(g, 4, {}), DomainError);
    CHECK_THROWS_AS(parse_ensemble("gue"), DomainError);
    CHECK(parse_ensemble("correlated-sum") == EnsembleKind::CorrelatedSum);
}
