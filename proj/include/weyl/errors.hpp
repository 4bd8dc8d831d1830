#pragma once

#include <stdexcept>

namespace weyl {

/// Violated mathematical precondition (det != 1, non-integral entry, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed user input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A height-bounded search ran out of candidates.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact lattice element broke a structural property that must hold for
/// Hilbert modular lattices.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace weyl
