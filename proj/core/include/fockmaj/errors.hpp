#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fockmaj {

// Parameter outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The truncation window cannot support the requested accuracy, or a
// comparison was asked at a tolerance finer than the omitted tail mass.
class TruncationTooCoarse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A normalization constant vanished (or underflowed).
class ZeroNormalization : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filtration annihilated the whole state: there is nothing to normalize.
class ZeroState : public ZeroNormalization {
 public:
  using ZeroNormalization::ZeroNormalization;
};

// Closed forms that only exist off the ideal case mu == lambda.
class DegenerateIdeal : public DomainError {
 public:
  using DomainError::DomainError;
};

class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Text-form parse failure; position is a 0-based offset into the input.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"),
        message_(what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  // The message without the position suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

}  // namespace fockmaj
