#pragma once

#include <stdexcept>
#include <string>

namespace regvar {

// Numeric machinery failed: bracket not found, bisection did not converge,
// overflow in an expression, finite-difference step underflow, no monotone
// threshold on the scanned range.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A stated hypothesis of the operation is violated by the configuration
// (correlation matrix not PSD, alpha=1 without L >= 1 increasing, weight row
// out of bounds, malformed function pair, inconsistent config).
struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace regvar
