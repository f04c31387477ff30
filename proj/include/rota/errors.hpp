#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rota {

// Base class for every error this library raises on purpose.  Anything else
// escaping the public entry points is a bug.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Field construction / arithmetic.
struct NonPrimeModulus : Error {
    explicit NonPrimeModulus(std::uint64_t p)
        : Error("modulus " + std::to_string(p) + " is not prime"), p(p) {}
    std::uint64_t p;
};

struct NotInvertible : Error {
    using Error::Error;
};

// A vector of the wrong ambient dimension (or wrong field) was passed in.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Bad vector-set description: empty entry set, explicit set that does not
// span, duplicate vectors, graphic size < 2, ...
struct InvalidTSpec : Error {
    using Error::Error;
};

// Whole-tuple rejection sampling gave up.  Carries the observed acceptance
// rate so the caller can tell a degenerate T from an unlucky run.
struct RejectionBudgetExceeded : Error {
    RejectionBudgetExceeded(std::uint64_t attempts, std::uint64_t accepted)
        : Error("rejection sampler exhausted its budget of " +
                std::to_string(attempts) + " attempts (acceptance estimate " +
                std::to_string(static_cast<double>(accepted) /
                               static_cast<double>(attempts)) +
                ")"),
          attempts(attempts), accepted(accepted) {}
    std::uint64_t attempts;
    std::uint64_t accepted;
};

// Enumeration or scan refused to start because the instance is too big.
struct TooLarge : Error {
    using Error::Error;
};

// An operation that needs at least one element got none.
struct EmptyList : Error {
    using Error::Error;
};

// No truncation length within budget makes the tail factor positive.
struct TailDiverges : Error {
    using Error::Error;
};

// Split point outside 1..n-1, or a mode/size combination that is undefined.
struct BadSplitPoint : Error {
    using Error::Error;
};

struct SerializationError : Error {
    using Error::Error;
};

} // namespace rota
