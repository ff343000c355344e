#pragma once

#include <stdexcept>
#include <string>

namespace prefront {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input: bad dimensions, invalid weights,
/// probabilities that do not sum to one, wrong objective arity.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A computation that cannot proceed on the given data: candidate caps,
/// sampler rejection limits, non-terminating ascent.
class ComputationError : public Error {
public:
    explicit ComputationError(const std::string& what) : Error(what) {}
};

/// Skewness/kurtosis requested on a (near) zero-variance distribution.
class DegenerateDistribution : public ComputationError {
public:
    explicit DegenerateDistribution(const std::string& what) : ComputationError(what) {}
};

/// A portfolio list handed to a chain operation is not pairwise comparable.
class NotAChain : public ComputationError {
public:
    explicit NotAChain(const std::string& what) : ComputationError(what) {}
};

/// File system / parsing failures in the CLI layer.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace prefront
