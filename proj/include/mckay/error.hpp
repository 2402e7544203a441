#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mckay {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed cyclotomic or polynomial expression. `position` is a 0-based
/// byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Closure exceeded the configured element budget.
class GroupTooLarge : public Error {
 public:
  GroupTooLarge(std::size_t partial, std::size_t limit)
      : Error("group too large or infinite: more than " +
              std::to_string(limit) + " elements (closure stopped at " +
              std::to_string(partial) + ")"),
        partial_(partial),
        limit_(limit) {}

  std::size_t partial_count() const noexcept { return partial_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t partial_;
  std::size_t limit_;
};

/// Input group is not contained in SL(V) where the computation requires it.
class NotSpecialLinear : public Error {
 public:
  using Error::Error;
};

/// An internal self-check failed. Raised for conditions the mathematics
/// guarantees cannot happen, so seeing one means a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace mckay
