#pragma once

#include <stdexcept>
#include <string>

namespace csit {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File has a bad magic number, unsupported version, or unparsable structure.
struct FormatError : Error {
    using Error::Error;
};

// File structure is recognized but the payload is inconsistent (truncated,
// wrong row length, ...).
struct CorruptError : Error {
    using Error::Error;
};

// A value is outside its mathematical domain (negative magnitude, unknown
// rotation id, non-positive bandwidth, ...).
struct DomainError : Error {
    using Error::Error;
};

// Dimensions of two operands do not agree.
struct ShapeError : Error {
    using Error::Error;
};

// An operation that needs at least one element received none.
struct EmptyInputError : Error {
    using Error::Error;
};

// Zero frames were requested from a generator.
struct EmptyRequestError : Error {
    using Error::Error;
};

// An operation was called before its prerequisite state was established.
struct StateError : Error {
    using Error::Error;
};

// A configuration is structurally invalid (e.g. latent length collapses to 0).
struct ConfigError : Error {
    using Error::Error;
};

// An online window holds fewer frames than the detector requires.
struct InsufficientDataError : Error {
    using Error::Error;
};

// ROC computation needs both classes present.
struct DegenerateLabelsError : Error {
    using Error::Error;
};

} // namespace csit
