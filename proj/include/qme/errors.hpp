#pragma once

#include <stdexcept>
#include <string>

namespace qme {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operand dimensions are incompatible.
struct DimensionError : Error {
    using Error::Error;
};

// A matrix required to be Hermitian is not, beyond tolerance.
struct NotHermitianError : Error {
    using Error::Error;
};

// A matrix required to be positive semidefinite has an eigenvalue below -tolerance.
struct NotPositiveError : Error {
    using Error::Error;
};

// An iterative routine failed to converge, or a computed quantity left its
// mathematically guaranteed range by more than tolerance.
struct NumericalError : Error {
    using Error::Error;
};

// A domain object failed validation. Carries the name of the violated
// invariant and the signed margin by which it was violated.
struct InvariantViolation : Error {
    std::string invariant;
    double margin;
    InvariantViolation(const std::string& inv, double mar, const std::string& detail)
        : Error(inv + " violated by " + std::to_string(mar) + ": " + detail),
          invariant(inv),
          margin(mar) {}
};

// An effect that must be nonzero vanished (or a complement/product collapsed to zero).
struct ZeroEffectError : Error {
    using Error::Error;
};

// A declared coarse-graining target has an empty fiber.
struct NotSurjectiveError : Error {
    using Error::Error;
};

// An outcome label is unknown, duplicated, or missing from an assignment.
struct LabelError : Error {
    using Error::Error;
};

// An instrument does not measure the observable it was paired with.
struct InstrumentMismatchError : Error {
    using Error::Error;
};

// Entropy bounds are undefined because tr(rho a) vanishes.
struct UndefinedBoundError : Error {
    using Error::Error;
};

// A property-check id is not in the registry.
struct UnknownCheckError : Error {
    using Error::Error;
};

// A suite or CLI configuration value is out of range.
struct ConfigError : Error {
    using Error::Error;
};

// A JSON payload does not match the interchange schema.
struct JsonError : Error {
    using Error::Error;
};

}  // namespace qme
