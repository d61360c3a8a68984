#pragma once

#include <stdexcept>
#include <string>

namespace lyap {

// Invalid arguments or configuration (CLI exit code 2).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Overflow, truncation failure, loss of precision (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lyap
