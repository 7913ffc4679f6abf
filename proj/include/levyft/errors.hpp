#pragma once

#include <stdexcept>

namespace levyft {

/// Invalid inputs: parameters outside a documented domain (strip
/// violations, inadmissible damping, malformed configuration).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure: quadrature that does not converge, a certificate
/// that cannot be established, a tolerance that cannot be met.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace levyft
