#pragma once

#include <stdexcept>
#include <string>

namespace xyrevival {

/// Failure categories. The CLI maps each category to its own exit code.
enum class ErrorCategory {
  invalid_argument = 2,
  config = 3,
  capacity = 4,
  numerical = 5,
  io = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Precondition violated by the caller.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCategory::invalid_argument, what) {}
};

/// A Hilbert space or dense matrix exceeds a configured size cap.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what)
      : Error(ErrorCategory::capacity, what) {}
};

/// An iterative method failed to reach its tolerance.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorCategory::numerical, what) {}
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

/// File could not be read or written.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

}  // namespace xyrevival
