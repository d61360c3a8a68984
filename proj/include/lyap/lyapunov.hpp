#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lyap/ensembles.hpp"

namespace lyap {

// QrAccumulation: sums of log R_kk, the finite-time QR exponents.
// GradedSvd: exact eigenvalues of L from the same recursion, R_M...R_1 kept as
// diag(exp(s)) T with T unit upper triangular and finished by one-sided Jacobi.
enum class LyapunovMethod { QrAccumulation, HighPrecisionSvd, GradedSvd };

std::string to_string(LyapunovMethod method);
LyapunovMethod parse_method(std::string_view name);

struct LyapunovSpectrum {
    std::vector<double> lambdas;  // ascending
    int n = 0;
    int m = 0;
    LyapunovMethod method = LyapunovMethod::QrAccumulation;
    std::uint64_t sample_index = 0;
    std::uint64_t master_seed = 0;
};

struct QrOptions {
    // Number of factors multiplied together between two QR factorizations.
    // 1 is the textbook recursion; larger values trade conditioning for speed.
    int reorth_interval = 1;
};

LyapunovSpectrum qr_lyapunov(const ProductSpec& spec, std::uint64_t sample_index, std::uint64_t master_seed,
                             const QrOptions& opts = {});

LyapunovSpectrum graded_lyapunov(const ProductSpec& spec, std::uint64_t sample_index, std::uint64_t master_seed,
                                 const QrOptions& opts = {});
LyapunovSpectrum lyapunov_spectrum(const ProductSpec& spec, std::uint64_t sample_index, std::uint64_t master_seed,
                                   LyapunovMethod method, const QrOptions& opts = {});

// Same recursions on explicit factors X_1..X_M (multiplication order).
std::vector<double> qr_exponents(std::span<const CMatrix> factors, const QrOptions& opts = {});
std::vector<double> graded_exponents(std::span<const CMatrix> factors, const QrOptions& opts = {});

LyapunovSpectrum exact_lyapunov_highprec(const ProductSpec& spec, std::uint64_t sample_index,
                                         std::uint64_t master_seed, int digits);

std::vector<double> highprec_exponents(std::span<const CMatrix> factors, int digits);

// 2 M (psi(N) + 1) / ln 10
int recommended_digits(int n, int m);

// Samples [first, first + count) in parallel; output ordered by sample index.
std::vector<LyapunovSpectrum> simulate_spectra(const ProductSpec& spec, std::uint64_t master_seed,
                                               std::uint64_t first, std::uint64_t count, int threads,
                                               const QrOptions& opts = {},
                                               LyapunovMethod method = LyapunovMethod::QrAccumulation);

struct GaussianTheory {
    int j = 1;
    double mean = 0;
    double sigma = 0;
};

GaussianTheory gaussian_theory(int j, int m);
double wsr(int j, int m);
double wsr_asymptotic(int j, int m);
double gaussian_density(double lambda, int n, int m);

}  // namespace lyap
