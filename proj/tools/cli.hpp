#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "lyap/kernels.hpp"
#include "lyap/lyapunov.hpp"

namespace lyap::cli {

inline constexpr const char* tool_version = "lyap 1.0.0";

enum ExitCode { Success = 0, ComparisonFailed = 1, UsageError = 2, NumericalFailure = 3 };

struct GridSpec {
    double lo = 0;
    double hi = 0;
    int count = 0;
};

// "min:max:count", endpoints included
GridSpec parse_grid(const std::string& text);

using Metadata = std::map<std::string, std::string>;

struct SampleFile {
    Metadata meta;
    std::vector<LyapunovSpectrum> spectra;
};

void write_samples(std::ostream& os, const Metadata& meta, const std::vector<LyapunovSpectrum>& spectra);
SampleFile read_samples(const std::string& path);

void write_curve(std::ostream& os, const Metadata& meta, const DensityCurve& curve);
struct CurveFile {
    Metadata meta;
    DensityCurve curve;
};
CurveFile read_curve(const std::string& path);

// Runs one invocation; returns the process exit code. Diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lyap::cli
