// Error types shared across the library. Configuration and precondition
// problems throw; finite-truncation limits that are expected at desk scale
// (budget exhaustion) carry partial results so callers can report them.
#pragma once

#include <stdexcept>
#include <string>

namespace ggt {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A word used letters outside the backend alphabet, or two backends were mixed.
class alphabet_error : public error {
public:
    using error::error;
};

/// Malformed presentation, rejected rewriting system, bad Floyd parameters, ...
class config_error : public error {
public:
    using error::error;
};

/// An operation was called outside its documented domain.
class precondition_error : public error {
public:
    using error::error;
};

/// Enumeration ran out of its element budget. completed_radius is the last
/// fully enumerated sphere.
class budget_error : public error {
public:
    budget_error(const std::string& what, int completed_radius)
        : error(what), completed_radius(completed_radius) {}
    int completed_radius;
};

}  // namespace ggt
