#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Quadrature or series failed to reach the requested tolerance.  The best
// available value and its error estimate ride along so callers can decide
// whether the partial result is still usable.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial, double error_estimate)
        : std::runtime_error(what), partial_(partial), error_(error_estimate) {}
    double partial() const { return partial_; }
    double error_estimate() const { return error_; }

private:
    double partial_;
    double error_;
};

// Bad key, missing key, unparsable value, ... in a run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Asked for an asymptotic sensitivity formula outside every regime it is
// valid in.
class OutOfRegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace casimir
