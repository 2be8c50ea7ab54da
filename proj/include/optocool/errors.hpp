// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace optocool {

struct InvalidDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Steady-state manifold has dimension > 1; the solver refuses to pick a
// representative.
struct NonUniqueSteadyState : std::runtime_error {
    NonUniqueSteadyState(const std::string& msg, int null_dim)
        : std::runtime_error(msg), null_space_dimension(null_dim) {}
    int null_space_dimension;
};

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PositivityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalCorruption : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cooling closed form evaluated where its denominator is non-positive.
struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& msg, std::vector<std::string> issues_ = {})
        : std::runtime_error(msg), issues(std::move(issues_)) {}
    std::vector<std::string> issues;
};

}  // namespace optocool
