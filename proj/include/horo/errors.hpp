#pragma once

#include <stdexcept>
#include <string>

namespace horo {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (nonpositive scale, kind mismatch, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A configured cap (word-ball radius, memory budget, iteration count) was hit.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

// A fundamental-domain reduction did not terminate or produced a bad point.
class ReductionFailure : public Error {
public:
    using Error::Error;
};

// A limit estimate (Key Lemma limits) failed its Cauchy test.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

// Malformed text input: generator files, model descriptors, CSV.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace horo
