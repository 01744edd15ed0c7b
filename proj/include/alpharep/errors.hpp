#pragma once

#include <stdexcept>
#include <string>

namespace alpharep {

/// Malformed or contract-violating input (bad field spec, dimension
/// mismatch, unknown labels, non-symmetric matrix where one is required).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// The requested formula does not apply to this instance
/// (loop present for the characteristic-polynomial sum, coloop present
/// for the dual form, graph outside the cubic biconnected planar class).
class inapplicable_error : public std::runtime_error {
public:
    explicit inapplicable_error(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration would exceed the configured term budget.  Carries the
/// exact number of terms the enumeration would need.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, unsigned long long required)
        : std::runtime_error(what), required_terms(required) {}

    unsigned long long required_terms;
};

} // namespace alpharep
