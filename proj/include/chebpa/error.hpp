#pragma once

#include <stdexcept>
#include <string>

namespace chebpa {

// Base of every error the library raises. The CLI maps each subclass to a
// distinct exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two strings or permutations that cannot be compared position-wise.
class ComparabilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The instance is well-formed but too large for the requested method.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A permutation array failed its distance certificate.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// The bound table derived a lower bound above an upper bound.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// Malformed input files and storage failures.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace chebpa
