#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pgds {

/// A construction or operation was called with parameters outside its stated
/// constraints. The message quotes the violated constraint.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual or JSON input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The incidence structure does not have constant block size and constant
/// replication number.
class NotTacticalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exhaustive job exceeds its configured candidate budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::uint64_t candidates, std::uint64_t budget)
      : std::runtime_error("search space of " + std::to_string(candidates) +
                           " candidates exceeds budget " + std::to_string(budget)),
        candidates_(candidates),
        budget_(budget) {}

  std::uint64_t candidates() const noexcept { return candidates_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t candidates_;
  std::uint64_t budget_;
};

}  // namespace pgds
