#pragma once

#include <stdexcept>
#include <string>

namespace eq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

// The norm family has no closed-form distortion constant; use the
// sampled certificate instead.
struct UnsupportedFamily : Error {
    using Error::Error;
};

// The norm fails ||x|| <= ||x||_ref. Dividing all effective weights by
// `rescale` restores the normalization.
struct NormalizationViolation : Error {
    NormalizationViolation(const std::string& msg, double rescale_)
        : Error(msg), rescale(rescale_) {}
    double rescale;
};

// A map that should send its box into itself produced a value outside it.
struct BoxViolation : Error {
    using Error::Error;
};

// A theorem hypothesis (certificate bound, condition on parameters) fails.
struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace eq
