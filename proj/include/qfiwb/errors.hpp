#pragma once

#include <stdexcept>
#include <string>

namespace qfiwb {

// Precondition or invariant of an operation was violated by the caller.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested object exceeds the dense-storage limits.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Floating-point result failed a consistency check (non-convergence, negative variance, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a formula (e.g. hypothesis of a bound violated).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qfiwb
