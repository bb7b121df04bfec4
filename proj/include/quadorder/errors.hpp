#pragma once

#include <stdexcept>

namespace quadorder {

// Argument outside the mathematical domain of the operation (non-prime where a
// prime is required, non-squarefree d, mixed-field arithmetic, ...).
// The CLI maps this to exit code 1.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structurally valid input that exceeds the supported magnitude (e.g. an index
// above the 64-bit factorization bound that was not supplied pre-factored).
// The CLI maps this to exit code 3.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent on-disk data (unit cache files, checkpoints).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace quadorder
