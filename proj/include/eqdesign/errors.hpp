#pragma once

#include <stdexcept>
#include <string>

namespace eqdesign {

/// Malformed user input: files, formulas, scheme entries, CLI values.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A search whose estimated size exceeds the configured cap. Raised instead
/// of silently returning a wrong or truncated answer.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Violated internal invariant (a bug, not a user error).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace eqdesign
