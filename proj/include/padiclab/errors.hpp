#pragma once

#include <stdexcept>
#include <string>

namespace padiclab {

/// Input lies outside the domain of an operation (non-prime p, singular
/// matrix, element outside a Lie algebra, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The tracked p-adic precision is too small to decide the answer.
/// Kept distinct from DomainError: the question may well have an answer
/// at higher precision.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different fields.
class OwnerMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the configured cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A suite configuration or command line is invalid.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace padiclab
