#pragma once

#include <stdexcept>
#include <string>

namespace gausscrit {

// Invalid input: out-of-domain parameters, malformed matrices, bad grid specs.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A covariance input whose symmetric defect exceeds the allowed tolerance.
class AsymmetryError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A numerical integration whose two refinement levels disagree beyond tolerance.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double delta)
        : std::runtime_error(what), delta_(delta) {}

    double delta() const noexcept { return delta_; }

private:
    double delta_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gausscrit
