#pragma once

#include <stdexcept>
#include <string>

namespace epi {

/// Invalid argument or value outside an operation's domain (bad n, p, order...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// D(P||Q) with P putting mass where Q has none.
class InfiniteDivergence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or iterative routine hit its term cap before meeting the tolerance.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested computation is larger than the configured size budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal identity that must hold exactly did not (e.g. a non-polynomial
/// remainder in the certificate pipeline).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace epi
