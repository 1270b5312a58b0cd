#pragma once

#include <stdexcept>
#include <string>

namespace hall {

// Base class for everything this library throws on purpose.
struct HallError : std::runtime_error {
    explicit HallError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed user input (bad matrix/word text, mismatched n, bad flags).
// The CLI maps this to exit code 2.
struct ValidationError : HallError {
    explicit ValidationError(const std::string& msg) : HallError(msg) {}
};

// A division that the theory guarantees to be exact was not.
struct NonExactDivision : HallError {
    explicit NonExactDivision(const std::string& msg) : HallError(msg) {}
};

// The candidate set for a generic extension had no unique deg-maximal element.
struct NoUniqueMaximum : HallError {
    explicit NoUniqueMaximum(const std::string& msg) : HallError(msg) {}
};

struct InputNotStronglyPeriodic : ValidationError {
    explicit InputNotStronglyPeriodic(const std::string& msg) : ValidationError(msg) {}
};

struct InputNotAperiodic : ValidationError {
    explicit InputNotAperiodic(const std::string& msg) : ValidationError(msg) {}
};

struct NotPyramidic : ValidationError {
    explicit NotPyramidic(const std::string& msg) : ValidationError(msg) {}
};

// A monomial expansion whose leading coefficient is not 1.
struct LeadingCoefficientNotOne : HallError {
    explicit LeadingCoefficientNotOne(const std::string& msg) : HallError(msg) {}
};

// The canonical-basis subtraction loop ran longer than the poset ideal allows.
struct NonTermination : HallError {
    explicit NonTermination(const std::string& msg) : HallError(msg) {}
};

// An oracle enumeration would exceed the configured candidate budget.
// The CLI maps this to exit code 3.
struct BudgetExceeded : HallError {
    explicit BudgetExceeded(const std::string& msg) : HallError(msg) {}
};

// The hom-fingerprint system was singular (cannot happen for a valid
// nilpotent representation; indicates a bug).
struct SingularSystem : HallError {
    explicit SingularSystem(const std::string& msg) : HallError(msg) {}
};

} // namespace hall
