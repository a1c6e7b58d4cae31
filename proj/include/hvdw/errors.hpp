#pragma once

#include <stdexcept>
#include <string>

namespace hvdw {

struct SelectionRuleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Real-axis evaluation landed exactly on a spectral pole.
struct ResonanceError : std::domain_error {
    using std::domain_error::domain_error;
};

// Quadrature or eigensolver failed to reach the requested accuracy.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hvdw
