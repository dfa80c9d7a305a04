#pragma once

#include <stdexcept>
#include <string>

namespace disthom {

// Malformed input data: out-of-range table entries, bad specs, bad files.
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource budget (degree cap, tuple count, matrix size) was hit.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant failed; indicates a bug, not bad input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace disthom
