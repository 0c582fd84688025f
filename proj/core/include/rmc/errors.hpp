#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rmc {

// Thrown when an enumeration would exceed its configured budget.  Carries the
// exact combinatorial count so callers can re-run with a larger budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what_task, std::uint64_t required, std::uint64_t budget)
        : std::runtime_error(what_task + ": requires " + std::to_string(required) +
                             " objects, budget is " + std::to_string(budget)),
          required_(required),
          budget_(budget) {}

    std::uint64_t required() const { return required_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

}  // namespace rmc
