#pragma once

#include <stdexcept>
#include <string>

namespace mimoic {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class PSDViolation : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// Target rate pair lies outside the compact region of the explicit scheme.
class NotInR2 : public Error {
public:
    using Error::Error;
};

/// No sub-rate tuple was found for a target the selected scheme should achieve.
/// Raised only on an internal inconsistency.
class InfeasibleSplit : public Error {
public:
    using Error::Error;
};

/// The SISO lower-bound formula needs 0 < INR1 < SNR2 and 0 < INR2 < SNR1.
class NotWeakIC : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace mimoic
