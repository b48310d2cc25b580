#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace isodist {

// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adaptive refinement or root bracketing did not reach its tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double search_space)
      : std::runtime_error(what), search_space_(search_space) {}

  double search_space() const noexcept { return search_space_; }

 private:
  double search_space_;
};

}  // namespace isodist
