#pragma once

#include <cstdint>
#include <vector>

#include "lyap/stats.hpp"

namespace lyap {

struct DysonSpec {
    int n = 64;
    double tau = 0.25;  // variance of the perturbation per eigenvalue, unit spacing
    std::uint64_t samples = 10000;
    std::uint64_t master_seed = 0;
    double origin = 1.0;  // D = diag(origin, origin + 1, ...)
    void validate() const;
};

// Sorted eigenvalues of D + W, W Hermitian with E|W_ij|^2 = tau.
std::vector<double> sample_dyson_spectrum(const DysonSpec& spec, std::uint64_t sample_index);

// Parallel over samples; ordered by sample index.
std::vector<std::vector<double>> sample_dyson_spectra(const DysonSpec& spec, int threads = 1);

// Local coordinates of the middle-third eigenvalues: each index k is measured from
// a cubic fit of its mean position and divided by the fitted local spacing, then
// folded into [-1/2, 1/2).
std::vector<std::vector<double>> dyson_local_values(const std::vector<std::vector<double>>& spectra);

// Default histogram: 21 bins on [-1/2, 1/2), so 0 is a bin center.
HistogramSpec dyson_histogram_spec(std::uint64_t seed);

EmpiricalDensity dyson_local_density(const DysonSpec& spec, int threads = 1);

}  // namespace lyap
