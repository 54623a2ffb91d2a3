#pragma once

#include <stdexcept>
#include <string>

namespace thresh {

/// Argument outside the mathematical domain of an operation (e.g. K1 at z <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ODE integration produced a non-finite or overflowing value.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double radius)
      : std::runtime_error(what + " (r = " + std::to_string(radius) + ")"),
        radius_(radius) {}

  double radius() const noexcept { return radius_; }

 private:
  double radius_;
};

/// Root bracket without a sign change, or an inconsistent matched solution.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weight or parameter set that violates the hypothesis of a check.
class ParameterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace thresh
