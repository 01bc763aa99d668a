#pragma once

#include <stdexcept>
#include <string>

namespace psol {

/// A precondition of a library operation was violated by its inputs.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or expansion would exceed its configured resource cap.
class BudgetExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-check failed. Always a bug, never an input problem.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace psol
