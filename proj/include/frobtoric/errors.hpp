#pragma once

#include <stdexcept>
#include <string>

namespace frobtoric {

// Base of every error the library raises.  The CLI maps the subclasses to
// exit statuses (input errors -> 2, capacity -> 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or semantically invalid user input.
class InputError : public Error {
 public:
  using Error::Error;
};

// A configured desk-scale bound was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Arithmetic on Witt pairs over different primes.
class PrimeMismatch : public InputError {
 public:
  using InputError::InputError;
};

// Ring operation on semigroup-ring elements declared on different charts.
class ChartMismatch : public InputError {
 public:
  using InputError::InputError;
};

// A monomial whose exponent is not in the chart semigroup.
class ChartMembershipError : public InputError {
 public:
  using InputError::InputError;
};

class FanAxiomViolation : public InputError {
 public:
  FanAxiomViolation(std::size_t first, std::size_t second, const std::string& what)
      : InputError(what), first_(first), second_(second) {}

  std::size_t first_cone() const { return first_; }
  std::size_t second_cone() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

// A divisor that admits no integral local linearization on some cone.
class NotCartier : public InputError {
 public:
  using InputError::InputError;
};

// Known dimensions in an exact sequence that cannot all hold at once.
class InconsistentInput : public InputError {
 public:
  using InputError::InputError;
};

// Two independent computations disagreed where mathematics says they
// cannot.  Always a bug in this library.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace frobtoric
