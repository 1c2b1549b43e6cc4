#pragma once

#include <stdexcept>
#include <string>

namespace rectexp {

// Parameters outside the admissible window (empty d-window, n <= 1/(4d), ...).
class ParameterDomainError : public std::domain_error
{
 public:
  using std::domain_error::domain_error;
};

// Iterations that fail to converge, singular shifted systems, pole hits.
class NumericalError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericalError
{
 public:
  using NumericalError::NumericalError;
};

// Power iteration for the 2-norm hit its iteration cap; carries the last estimate.
class NormNotConvergedError : public NumericalError
{
 public:
  NormNotConvergedError(const std::string& what, double estimate)
      : NumericalError(what), estimate_(estimate)
  {
  }
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

class IoError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rectexp
