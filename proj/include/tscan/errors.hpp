#pragma once

#include <stdexcept>
#include <string>

namespace tscan {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A ChartSpec is missing or mis-sets a field its kind requires.
struct SpecError : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct AsymmetricMatrix : Error {
    using Error::Error;
};

struct NotPositiveDefinite : Error {
    using Error::Error;
};

// Argument outside the domain of a closed-form expression.
struct DomainError : Error {
    using Error::Error;
};

// No closed-form result exists for this chart kind.
struct UnsupportedKind : Error {
    using Error::Error;
};

// Threshold search could not straddle the target.
struct NoBracket : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct MissingValue : Error {
    using Error::Error;
};

struct DuplicateDate : Error {
    using Error::Error;
};

struct NonPositivePrice : Error {
    using Error::Error;
};

struct DegenerateChannel : Error {
    using Error::Error;
};

}  // namespace tscan
