#pragma once

#include <stdexcept>
#include <string>

namespace nlslab {

// Bad user input; field() names the offending parameter.
class ValidationError : public std::invalid_argument {
public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

// A computation would exceed its configured cost guard.
class BudgetError : public std::runtime_error {
public:
  BudgetError(const std::string& what, double would_be)
      : std::runtime_error(what), would_be_(would_be) {}
  double would_be() const noexcept { return would_be_; }

private:
  double would_be_;
};

// Two code paths that must agree did not.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Non-finite values, non-converged quadrature and similar numerical failures.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlslab
