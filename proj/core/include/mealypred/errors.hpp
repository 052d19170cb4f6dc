#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mealypred {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state index outside [0, num_states).
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// Malformed machine document or bit string. `line()` is 1-based, 0 when the
/// error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

  /// Same error with "<source>: " prepended to the message.
  ParseError with_source(const std::string& source) const {
    return ParseError(source + ": " + what(), line_, nullptr);
  }

 private:
  ParseError(const std::string& full_message, std::size_t line, std::nullptr_t)
      : Error(full_message), line_(line) {}

  std::size_t line_;
};

/// The observed outputs cannot be produced by the machine(s) being tracked.
class InconsistentObservationError : public Error {
 public:
  using Error::Error;
};

/// A requested enumeration is larger than the configured cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace mealypred
