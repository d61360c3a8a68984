#include "lyap/ensembles.hpp"

#include <boost/random/normal_distribution.hpp>
#include <cmath>

#include "lyap/error.hpp"

namespace lyap {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::string to_string(EnsembleKind kind)
{
    switch (kind) {
    case EnsembleKind::Ginibre: return "ginibre";
    case EnsembleKind::Bernoulli: return "bernoulli";
    case EnsembleKind::CorrelatedSum: return "correlated-sum";
    case EnsembleKind::DmpkStep: return "dmpk-step";
    }
    return "unknown";
}

EnsembleKind parse_ensemble(std::string_view name)
{
    if (name == "ginibre") return EnsembleKind::Ginibre;
    if (name == "bernoulli") return EnsembleKind::Bernoulli;
    if (name == "correlated-sum" || name == "correlated") return EnsembleKind::CorrelatedSum;
    if (name == "dmpk-step" || name == "dmpk") return EnsembleKind::DmpkStep;
    throw DomainError("unknown ensemble: " + std::string(name));
}

void ProductSpec::validate() const
{
    if (n < 1) throw DomainError("n must be >= 1");
    if (m < 1) throw DomainError("m must be >= 1");
    if (kind == EnsembleKind::DmpkStep) {
        if (!dt || !(*dt > 0.0)) throw DomainError("dmpk-step needs dt > 0");
        if (gamma && !std::isfinite(*gamma)) throw DomainError("gamma must be finite");
    } else if (gamma || dt) {
        throw DomainError("gamma/dt only apply to dmpk-step");
    }
}

std::mt19937_64 RngStream::engine(std::uint64_t factor_index) const
{
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ sample_index);
    h = splitmix64(h ^ factor_index);
    return std::mt19937_64(h);
}

void fill_ginibre(CMatrix& g, std::mt19937_64& eng)
{
    boost::random::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const Eigen::Index total = g.size();
    std::complex<double>* out = g.data();
    for (Eigen::Index i = 0; i < total; ++i) {
        const double re = normal(eng);
        out[i] = {re, normal(eng)};
    }
}

void fill_bernoulli(CMatrix& g, std::mt19937_64& eng, bool normalize)
{
    static const std::complex<double> support[9] = {
        {0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
    };
    const double scale = normalize ? std::sqrt(3.0 / 4.0) : 1.0;
    const Eigen::Index total = g.size();
    std::complex<double>* out = g.data();
    for (Eigen::Index i = 0; i < total; ++i) {
        const std::uint64_t r = (eng() >> 32) * 9;  // top 32 bits scaled to [0, 9)
        out[i] = support[r >> 32] * scale;
    }
}

namespace {

void draw_a(const ProductSpec& spec, const RngStream& stream, int k, CMatrix& a)
{
    a.resize(spec.n, spec.n);
    auto eng = stream.engine(static_cast<std::uint64_t>(k));
    fill_ginibre(a, eng);
}

void build_factor(const ProductSpec& spec, const RngStream& stream, int k, const CMatrix* prev_a,
                  CMatrix& a, CMatrix& out)
{
    const int n = spec.n;
    out.resize(n, n);
    switch (spec.kind) {
    case EnsembleKind::Ginibre: {
        auto eng = stream.engine(static_cast<std::uint64_t>(k));
        fill_ginibre(out, eng);
        break;
    }
    case EnsembleKind::Bernoulli: {
        auto eng = stream.engine(static_cast<std::uint64_t>(k));
        fill_bernoulli(out, eng, spec.normalize_variance);
        break;
    }
    case EnsembleKind::CorrelatedSum: {
        draw_a(spec, stream, k, a);
        out = a;
        if (k > 1) {
            if (prev_a) {
                out += *prev_a;
            } else {
                CMatrix p;
                draw_a(spec, stream, k - 1, p);
                out += p;
            }
        }
        if (spec.normalize_variance && k > 1) out *= std::sqrt(0.5);
        break;
    }
    case EnsembleKind::DmpkStep: {
        auto eng = stream.engine(static_cast<std::uint64_t>(k));
        fill_ginibre(out, eng);
        const double dt = *spec.dt;
        out *= std::sqrt(dt);
        out.diagonal().array() += 1.0 + spec.gamma.value_or(0.0) * dt;
        break;
    }
    }
}

}  // namespace

MatrixSample sample_factor(const ProductSpec& spec, int factor_index, const RngStream& stream)
{
    spec.validate();
    if (factor_index < 1 || factor_index > spec.m) throw DomainError("factor_index out of range [1, m]");
    MatrixSample s;
    s.factor_index = factor_index;
    CMatrix a;
    build_factor(spec, stream, factor_index, nullptr, a, s.entries);
    return s;
}

std::vector<MatrixSample> product_factors(const ProductSpec& spec, std::uint64_t sample_index,
                                          std::uint64_t master_seed)
{
    FactorGenerator gen(spec, sample_index, master_seed);
    std::vector<MatrixSample> out(static_cast<std::size_t>(spec.m));
    for (auto& f : out) {
        gen.next(f.entries);
        f.factor_index = gen.index();
    }
    return out;
}

FactorGenerator::FactorGenerator(const ProductSpec& spec, std::uint64_t sample_index, std::uint64_t master_seed)
    : spec_(spec), stream_{master_seed, sample_index}
{
    spec_.validate();
}

void FactorGenerator::next(CMatrix& out)
{
    if (k_ >= spec_.m) throw DomainError("FactorGenerator exhausted");
    ++k_;
    if (spec_.kind == EnsembleKind::CorrelatedSum) {
        build_factor(spec_, stream_, k_, k_ > 1 ? &prev_ : nullptr, cur_, out);
        std::swap(prev_, cur_);
    } else {
        build_factor(spec_, stream_, k_, nullptr, cur_, out);
    }
}

}  // namespace lyap
