#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Base for every error raised by the library. The CLI maps the subclasses
// onto exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Shape or dimension mismatch between operands.
class StructuralError : public Error {
  public:
    using Error::Error;
};

// A family parameter (d, lambda, alpha, Schmidt vector) violates its invariant.
class ParameterError : public Error {
  public:
    using Error::Error;
};

// Input matrix is not a density matrix (negative spectrum beyond the clip window).
class NotAStateError : public Error {
  public:
    using Error::Error;
};

// Formula evaluated at a point where it is singular.
class DomainError : public Error {
  public:
    using Error::Error;
};

// Request exceeds the supported numerical envelope.
class CapabilityError : public Error {
  public:
    using Error::Error;
};

} // namespace qcorr
