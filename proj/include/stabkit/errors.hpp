#pragma once

#include <stdexcept>
#include <string>

namespace stabkit {

// Input/shape problems: malformed recipes, out-of-range arguments, mismatched
// lengths or field contexts. CLI maps these to exit code 2.
class schema_error : public std::invalid_argument {
public:
    explicit schema_error(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical precondition of a construction failed (e.g. a required
// dual-containment does not hold). The message names the violated rule.
// CLI maps these to exit code 3.
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// An exact computation would exceed the configured enumeration budget.
// CLI maps these to exit code 4.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace stabkit
