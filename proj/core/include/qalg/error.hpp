#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qalg {

// Malformed input: bad JSON, term syntax, arity mismatch, metric axiom violation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an operation does not hold (e.g. eps outside (0,1)).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Refusal to build a universe or search space above the configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, double projected, std::uint64_t cap)
      : std::runtime_error(what + ": projected size " + describe(projected) +
                           " exceeds cap " + std::to_string(cap)),
        projected_(projected),
        cap_(cap) {}

  double projected() const { return projected_; }
  std::uint64_t cap() const { return cap_; }

 private:
  static std::string describe(double v);

  double projected_;
  std::uint64_t cap_;
};

// Evaluation or lookup of something the model does not define.
class UndefinedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed-form operation whose result leaves a truncated carrier.
class TruncationError : public UndefinedError {
 public:
  using UndefinedError::UndefinedError;
};

}  // namespace qalg
