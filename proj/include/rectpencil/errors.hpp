#pragma once

#include <stdexcept>
#include <string>

namespace rectpencil {

/// Bad input: wrong shapes, unknown symbols, malformed files.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its target (e.g. missing eigenvalues).
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural identity that must hold exactly was found violated.
class IdentityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rectpencil
