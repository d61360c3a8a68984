#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace lyap {

using CMatrix = Eigen::MatrixXcd;

enum class EnsembleKind { Ginibre, Bernoulli, CorrelatedSum, DmpkStep };

std::string to_string(EnsembleKind kind);
EnsembleKind parse_ensemble(std::string_view name);

struct ProductSpec {
    EnsembleKind kind = EnsembleKind::Ginibre;
    int n = 1;
    int m = 1;
    std::optional<double> gamma;  // DmpkStep only
    std::optional<double> dt;     // DmpkStep only
    bool normalize_variance = true;

    void validate() const;
};

// Engine for the (master_seed, sample_index, factor_index) stream.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t sample_index = 0;

    std::mt19937_64 engine(std::uint64_t factor_index) const;
};

struct MatrixSample {
    CMatrix entries;
    int factor_index = 0;
};

MatrixSample sample_factor(const ProductSpec& spec, int factor_index, const RngStream& stream);

std::vector<MatrixSample> product_factors(const ProductSpec& spec, std::uint64_t sample_index,
                                          std::uint64_t master_seed);

// Sequential generator for one product; caches A_{j-1} for CorrelatedSum.
class FactorGenerator {
public:
    FactorGenerator(const ProductSpec& spec, std::uint64_t sample_index, std::uint64_t master_seed);

    // Writes X_k for k = 1, 2, ... into out.
    void next(CMatrix& out);
    int index() const { return k_; }

private:
    ProductSpec spec_;
    RngStream stream_;
    int k_ = 0;
    CMatrix prev_;
    CMatrix cur_;
};

// Fills g with i.i.d. complex normals, E|z|^2 = 1.
void fill_ginibre(CMatrix& g, std::mt19937_64& eng);
void fill_bernoulli(CMatrix& g, std::mt19937_64& eng, bool normalize);

}  // namespace lyap
