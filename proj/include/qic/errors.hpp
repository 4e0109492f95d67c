#pragma once

#include <stdexcept>
#include <string>

namespace qic {

// Every exception below signals either bad caller input or a genuine
// numerical fault.  None of them describe a reachable model state, so
// callers are not expected to recover beyond reporting.

struct NotHermitian : std::runtime_error {
    explicit NotHermitian(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidState : std::runtime_error {
    explicit InvalidState(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidChannel : std::runtime_error {
    explicit InvalidChannel(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct NonUniformPrior : std::runtime_error {
    explicit NonUniformPrior(const std::string& what) : std::runtime_error(what) {}
};

struct ChainRuleViolation : std::runtime_error {
    explicit ChainRuleViolation(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidEnsemble : std::runtime_error {
    explicit InvalidEnsemble(const std::string& what) : std::runtime_error(what) {}
};

struct EqualityFormMismatch : std::runtime_error {
    explicit EqualityFormMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionBudgetExceeded : std::runtime_error {
    explicit DimensionBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct BadLength : std::runtime_error {
    explicit BadLength(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qic
