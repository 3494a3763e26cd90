#pragma once

#include <stdexcept>
#include <string>

namespace treemoments {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const { return 3; }
};

// Bad input from the caller. The CLI maps these to exit status 2.
class ArgumentError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 2; }
};

class OracleSizeError : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

class OrderError : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

// Numeric and domain failures. The CLI maps these to exit status 3.
class NumericError : public Error {
public:
    using Error::Error;
};

class FieldError : public NumericError {
public:
    using NumericError::NumericError;
};

class DomainError : public NumericError {
public:
    using NumericError::NumericError;
};

class PoleError : public NumericError {
public:
    using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

class DivergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

class CapError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace treemoments
