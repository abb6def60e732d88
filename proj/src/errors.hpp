#pragma once

#include <stdexcept>
#include <string>

#include "bigint.hpp"

namespace flagcount {

// q is not of the form p^k.
struct NotPrimePowerError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// q is a prime power but exceeds the configured cap.
struct FieldCapError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An enumeration was refused because its estimated work exceeds the budget.
struct BudgetError : std::runtime_error {
  Bigint estimate;
  BudgetError(const std::string& msg, Bigint est)
      : std::runtime_error(msg), estimate(std::move(est)) {}
};

// A config file failed to parse; `line` is the 1-based offending line.
struct ConfigError : std::runtime_error {
  int line;
  ConfigError(const std::string& msg, int line_no)
      : std::runtime_error(msg), line(line_no) {}
};

}  // namespace flagcount
