#pragma once

#include <stdexcept>
#include <string>

namespace gatwb {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A first-order-only operation was given a second-order signature.
struct UnsupportedSignatureError : Error {
    explicit UnsupportedSignatureError(const std::string& msg) : Error(msg) {}
};

// An enumeration or closure exceeded its configured cap.
struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// A hard precondition was violated (ill-sorted input, unknown name, ...).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

} // namespace gatwb
