#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fthresh {

/// Base for all library errors that carry a user-facing diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed session text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A hypothesis of the requested computation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A computation ran past its configured step budget. Never a wrong answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A theorem-backed check failed; this indicates a bug, not bad input.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

/// Upper limit on elementary reduction steps spent by a single top-level
/// computation (one basis, one normal form batch, one frontier run).
struct Budget {
  std::uint64_t max_steps = 400'000'000;
};

/// Process-wide default; initialised from FT_BUDGET when set.
Budget default_budget();
void set_default_budget(Budget budget);

/// Counts steps against a budget and throws BudgetExceeded when exhausted.
class BudgetMeter {
 public:
  explicit BudgetMeter(Budget budget, const char* what = "computation")
      : limit_(budget.max_steps), what_(what) {}

  void charge(std::uint64_t steps = 1) {
    used_ += steps;
    if (used_ > limit_) {
      throw BudgetExceeded(std::string(what_) + ": step budget of " +
                           std::to_string(limit_) + " exceeded");
    }
  }

  std::uint64_t used() const noexcept { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  const char* what_;
};

}  // namespace fthresh
