#pragma once

#include <stdexcept>
#include <string>

namespace qparity {

// Requested allocation exceeds the configured qubit cap (or similar hard limit).
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// A conditional quantity (e.g. error probability given acceptance) was requested
// where the conditioning event has zero weight.
class undefined_conditional_error : public std::runtime_error {
public:
    explicit undefined_conditional_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qparity
