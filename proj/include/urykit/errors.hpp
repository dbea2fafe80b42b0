#pragma once

#include <stdexcept>
#include <string>

namespace urykit {

/// Base class for all errors raised by the library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or non-canonical input (bad rational, asymmetric matrix, ...).
struct input_error : error {
    explicit input_error(const std::string& what) : error(what) {}
};

/// A stated operation precondition does not hold (e.g. distortion >= theta).
struct precondition_error : error {
    explicit precondition_error(const std::string& what) : error(what) {}
};

/// An exponential construction would exceed its hard budget.
struct budget_error : error {
    explicit budget_error(const std::string& what) : error(what) {}
};

} // namespace urykit
