#pragma once

#include <stdexcept>
#include <string>

namespace gwr {

// Every error carries a stable machine-readable code; the CLI maps the
// category onto its exit status.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed or semantically invalid input (exit status 2).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message, std::string code = "invalid_input")
      : Error(std::move(code), message) {}
};

/// A configured size or resource cap would be exceeded (exit status 3).
class CapError : public Error {
 public:
  explicit CapError(const std::string& message, std::string code = "cap_exceeded")
      : Error(std::move(code), message) {}
};

class MemoryBudgetError : public CapError {
 public:
  explicit MemoryBudgetError(const std::string& message)
      : CapError(message, "memory_budget_exceeded") {}
};

/// A group element failed to induce a map on equivalence classes.
class WellDefinednessViolation : public Error {
 public:
  explicit WellDefinednessViolation(const std::string& message)
      : Error("well_definedness_violation", message) {}
};

}  // namespace gwr
