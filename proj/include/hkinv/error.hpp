#pragma once

#include <stdexcept>
#include <string>

namespace hkinv {

// Base class for every library error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (bad profile, bad argument, ...).
struct InvalidInput : Error {
    using Error::Error;
};

// Request outside the implemented range (e.g. genus components above weight 10).
struct Unsupported : Error {
    using Error::Error;
};

// A verification / consistency check failed on data that should be consistent.
struct VerificationFailure : Error {
    using Error::Error;
};

}  // namespace hkinv
