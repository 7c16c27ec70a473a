#pragma once

#include <stdexcept>
#include <string>

namespace discordia {

/// Input that fails a structural or physical invariant (bad dims, non-Hermitian
/// matrix, probabilities that do not sum to one, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input that is well formed but outside the numeric domain of a formula,
/// e.g. a unit-transmissivity channel for the capacity formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace discordia
