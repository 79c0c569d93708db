#pragma once

#include <stdexcept>
#include <string>

namespace rsrep {

// Input outside an operation's domain (e.g. x not in [0, x_max]).
struct domain_error : std::domain_error {
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Malformed call: bad serialized value, mismatched params, wrong mode.
struct usage_error : std::invalid_argument {
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// Parameter regime in which the requested quantity is undefined.
struct regime_error : std::domain_error {
    explicit regime_error(const std::string& what) : std::domain_error(what) {}
};

// Configured resource budget (depth, sample size, state count) exceeded.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rsrep
