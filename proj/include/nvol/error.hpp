#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nvol {

enum class ErrorKind {
  kSyntax,           // malformed polynomial / descriptor / number text
  kConstantTerm,     // polynomial has a constant term
  kUnknownVariable,  // variable index outside x1..x{nvars}
  kEmptySupport,     // every term cancelled
  kInvalidArgument,  // violated precondition (ranges, signs, lengths)
  kDimensionMismatch,
  kInvalidWeight,    // w_sum <= v_w(f)
  kNoValidWeight,    // no grid point / no start yields a valid weight
  kUnknownDescriptor,
  kUnknownMld,
  kUndecidable,
  kOutOfRange,
};

const char* to_string(ErrorKind kind);

// Validation errors are the caller's fault (bad input); the rest are
// computational outcomes on well-formed input.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t position)
      : Error(kind, message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nvol
