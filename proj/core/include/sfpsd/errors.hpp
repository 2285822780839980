#pragma once

#include <stdexcept>
#include <string>

namespace sfpsd {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failures of a numerical evaluation (domain, pole, overflow, convergence).
class NumericError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

class DivisionByZero : public NumericError {
 public:
  using NumericError::NumericError;
};

class QuadratureNoConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

class TailTooLarge : public NumericError {
 public:
  using NumericError::NumericError;
};

// Malformed input: bad spec files, shape mismatches, asymmetric matrices.
class SpecError : public Error {
 public:
  using Error::Error;
};

class NonHermitian : public SpecError {
 public:
  using SpecError::SpecError;
};

class DimensionMismatch : public SpecError {
 public:
  using SpecError::SpecError;
};

class ConjugateSymmetryViolation : public SpecError {
 public:
  using SpecError::SpecError;
};

class UnknownFunction : public SpecError {
 public:
  using SpecError::SpecError;
};

}  // namespace sfpsd
