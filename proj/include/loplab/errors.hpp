#pragma once

#include <stdexcept>
#include <string>

namespace loplab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameters : public Error {
public:
    using Error::Error;
};

// beta^2 = M*^2 - M^2 <= 0: the point is outside the hyperbolic range.
class NonHyperbolicPoint : public Error {
public:
    using Error::Error;
};

class DegeneratePolynomial : public Error {
public:
    using Error::Error;
};

// Both candidate roots sit on the imaginary axis although Re s > 0.
class BranchAmbiguity : public Error {
public:
    using Error::Error;
};

// Rows 2..7 of the Lopatinski matrix are numerically dependent.
class SingularSelection : public Error {
public:
    SingularSelection(const std::string& what, double smallest_singular_value)
        : Error(what), smallest_singular_value_(smallest_singular_value) {}

    double smallest_singular_value() const noexcept { return smallest_singular_value_; }

private:
    double smallest_singular_value_;
};

class BranchMismatch : public Error {
public:
    using Error::Error;
};

// Closed-form verdict and numerical root search tell different stories.
class DisagreementError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class SweepTooLarge : public Error {
public:
    using Error::Error;
};

}  // namespace loplab
