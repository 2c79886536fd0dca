// errors.hpp — exception hierarchy shared across the library.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdse {

// Thrown by CoeffExpr::parse; `offset` is the byte position of the offending
// token (== source length when the input ends too early).
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t offset_)
        : std::runtime_error(what), offset(offset_) {}
    std::size_t offset;
};

// Thrown when evaluating an expression outside its domain (division by zero,
// ln of a non-positive number, sqrt of a negative number, overflow).
struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// Auxiliary-equation initial data that does not satisfy the Wronskian
// normalization W = -i.
struct InvalidInitialData : std::runtime_error {
    InvalidInitialData(const std::string& what, double defect_)
        : std::runtime_error(what), defect(defect_) {}
    double defect;
};

// The integrator lost the Wronskian invariant beyond the failure threshold.
struct WronskianDriftError : std::runtime_error {
    WronskianDriftError(const std::string& what, double defect_, double at_time_)
        : std::runtime_error(what), defect(defect_), at_time(at_time_) {}
    double defect;
    double at_time;
};

// An expectation value that must be real carried an imaginary residue above
// the corruption threshold.
struct ImaginaryResidueError : std::runtime_error {
    ImaginaryResidueError(const std::string& what, double residue_)
        : std::runtime_error(what), residue(residue_) {}
    double residue;
};

// Malformed or self-inconsistent run configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tdse
