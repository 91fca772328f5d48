#pragma once

#include <stdexcept>
#include <string>

namespace phasegrover {

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// t < N/4: no (beta, gamma) in [0, 2pi]^2 zeroes the unmarked amplitude in one step.
class InfeasibleSingleQuery : public Error {
public:
    using Error::Error;
};

// Marked count outside the range an operation accepts.
class InvalidCount : public Error {
public:
    using Error::Error;
};

// A value violates its type invariant (non-normalized state, bad phase, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Amplitudes within the marked or unmarked class are not uniform.
class NotCollapsible : public Error {
public:
    using Error::Error;
};

// Oracle document errors.
class ParseError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class CountError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// A numerical self-check failed.
class VerificationFailed : public Error {
public:
    using Error::Error;
};

// Two engines disagreed beyond tolerance.
class EngineMismatch : public VerificationFailed {
public:
    using VerificationFailed::VerificationFailed;
};

} // namespace phasegrover
