#pragma once

#include <stdexcept>
#include <string>

namespace heatback {

// Root of the library's failure taxonomy. Callers that only need coarse
// handling (the CLI, for instance) can catch this one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside its mathematical domain (x0 not in (0,1), negative delta, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Mismatched grids or vector lengths between objects that must share one.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Evaluation at a singular point (kernel diagonal) or factorization breakdown.
class SingularityError : public Error {
public:
    using Error::Error;
};

// Discrepancy principle is unsolvable because the data norm does not exceed
// the noise level; no positive alpha can match the residual to delta.
class NoiseDominatesError : public Error {
public:
    using Error::Error;
};

// Geometric bracket growth exhausted without straddling the target residual.
class BracketingError : public Error {
public:
    using Error::Error;
};

// File or stream failure while reading or writing artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace heatback
