#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace squidgate {

// Base for physics/protocol-level failures (as opposed to std::invalid_argument,
// which is reserved for violated call preconditions).
class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Amplitude reached a cavity Fock state whose coupled partner lies outside the
// truncated space; continuing would silently discard population.
class TruncationLeakError : public SimError {
public:
    TruncationLeakError(const std::string& msg, double leaked_population)
        : SimError(msg), leaked(leaked_population) {}
    double leaked;
};

// A schedule step requires a cavity role (resonant/dispersive) that the current
// role assignment does not grant, or two SQUIDs are resonant at once.
class RoleConflictError : public SimError {
public:
    using SimError::SimError;
};

// A physical constraint on device parameters is violated (e.g. mismatched slot
// durations, or dispersive timing ratios that cannot be realized simultaneously).
// Carries the offending SQUID indices (1-based) when known.
class ConstraintError : public SimError {
public:
    explicit ConstraintError(const std::string& msg, std::vector<int> squid_indices = {})
        : SimError(msg), squids(std::move(squid_indices)) {}
    std::vector<int> squids;
};

// Eigensolve did not converge, or grid refinement shows unacceptable drift.
class ConvergenceError : public SimError {
public:
    using SimError::SimError;
};

}  // namespace squidgate
