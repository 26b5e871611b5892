#pragma once

#include <stdexcept>
#include <string>

namespace ramify {

/// Invalid input to an operation (bad group table, non-subgroup, ...).
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

/// A computed quantity contradicts a proven statement (zero conductor
/// determinant, local mass mismatch). Should never fire on valid input.
class TheoremViolation : public std::runtime_error {
public:
    TheoremViolation(std::string invariant, const std::string& witness)
        : std::runtime_error(invariant + ": " + witness), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

}  // namespace ramify
