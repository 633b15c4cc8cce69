#pragma once

#include <stdexcept>
#include <string>

namespace rolloutkit {

// Base class for everything thrown by the toolkit.  `declared_infeasible()`
// distinguishes "the instance/run has no feasible answer" (a legitimate
// outcome, exit code 2 in the CLI) from usage and data errors (exit code 1).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual bool declared_infeasible() const { return false; }
};

class InfeasibleError : public Error {
public:
    using Error::Error;
    bool declared_infeasible() const override { return true; }
};

// --- trajectory layer ---

class StageOverflow : public Error {
public:
    using Error::Error;
};

class InvalidControl : public Error {
public:
    using Error::Error;
};

class TrajectoryMismatch : public Error {
public:
    using Error::Error;
};

class TrajectoryLengthError : public Error {
public:
    using Error::Error;
};

// --- rollout layer ---

class InfeasibleStart : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

class DeadEnd : public InfeasibleError {
public:
    DeadEnd(int stage, const std::string& what, int completion_failures = 0,
            int candidates = 0)
        : InfeasibleError(what),
          stage_(stage),
          completion_failures_(completion_failures),
          candidates_(candidates) {}
    int stage() const { return stage_; }
    int completion_failures() const { return completion_failures_; }
    int candidates() const { return candidates_; }

private:
    int stage_;
    int completion_failures_;
    int candidates_;
};

class NotDecomposed : public Error {
public:
    using Error::Error;
};

class IncompleteHeuristic : public Error {
public:
    using Error::Error;
};

// --- assignment layer ---

class IsolatedPerson : public Error {
public:
    using Error::Error;
};

class Infeasible : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

class PriceInitError : public Error {
public:
    using Error::Error;
};

class InconsistentContext : public Error {
public:
    using Error::Error;
};

// --- discrete optimization layer ---

class InfeasiblePlacement : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

class SizeGuard : public Error {
public:
    using Error::Error;
};

// --- oracle layer ---

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class NoFeasibleTrajectory : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

// --- generic ---

class BadParams : public Error {
public:
    using Error::Error;
};

} // namespace rolloutkit
