#ifndef SISHD_ERRORS_HPP
#define SISHD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sishd {

/// Invalid parameters, states, configuration values or malformed input files.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite arithmetic, positivity breaches and degenerate integrals.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by operations that require the endemic equilibrium when R0 <= 1.
class NoEndemicEquilibrium : public std::domain_error {
public:
    NoEndemicEquilibrium() : std::domain_error("no endemic equilibrium (R0 <= 1)") {}
};

} // namespace sishd

#endif
