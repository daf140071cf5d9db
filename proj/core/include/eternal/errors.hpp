#pragma once

#include <stdexcept>

namespace eternal {

/// Input outside the mathematical domain of an operation (|h| >= 1, lambda <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its declared tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Series truncation cannot certify the requested tail tolerance.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Discretization too coarse for the data it is asked to represent.
class AccuracyError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Evaluation requested too close to a pole of a meromorphic closed form.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace eternal
