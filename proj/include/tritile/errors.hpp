#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tritile {

/// Base of every domain error. kind() names the error class for reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define TRITILE_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                          \
    public:                                                              \
        using Error::Error;                                              \
        const char* kind() const noexcept override { return #Name; }    \
    };

TRITILE_DEFINE_ERROR(EmptyGraph)
TRITILE_DEFINE_ERROR(SameVertex)
TRITILE_DEFINE_ERROR(InvalidGraph)
TRITILE_DEFINE_ERROR(DivisibilityViolation)
TRITILE_DEFINE_ERROR(SideMismatch)
TRITILE_DEFINE_ERROR(NotAMatching)
TRITILE_DEFINE_ERROR(NotAPartition)
TRITILE_DEFINE_ERROR(SolverBudget)
TRITILE_DEFINE_ERROR(UnknownEdge)
TRITILE_DEFINE_ERROR(TooLarge)
TRITILE_DEFINE_ERROR(PreconditionViolated)
TRITILE_DEFINE_ERROR(SizeBudget)
TRITILE_DEFINE_ERROR(RangeError)
TRITILE_DEFINE_ERROR(ThresholdInfeasible)
TRITILE_DEFINE_ERROR(PartTooSmall)
TRITILE_DEFINE_ERROR(Disconnected)
TRITILE_DEFINE_ERROR(PartitionDegenerate)
TRITILE_DEFINE_ERROR(DenominatorOverflow)
TRITILE_DEFINE_ERROR(CoreUnsolved)
TRITILE_DEFINE_ERROR(TraceMismatch)
TRITILE_DEFINE_ERROR(BudgetExceeded)

#undef TRITILE_DEFINE_ERROR

/// Input text could not be parsed; line is 1-based (0 when unknown).
class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    const char* kind() const noexcept override { return "ParseError"; }
    int line() const { return line_; }

private:
    int line_;
};

/// A greedy procedure found no admissible triangle.
class StarvedStep : public Error {
public:
    StarvedStep(std::string side, int step, const std::string& detail = "")
        : Error("starved at " + side + " step " + std::to_string(step) +
                (detail.empty() ? "" : ": " + detail)),
          side_(std::move(side)),
          step_(step) {}
    const char* kind() const noexcept override { return "StarvedStep"; }
    const std::string& side() const { return side_; }
    int step() const { return step_; }

private:
    std::string side_;
    int step_;
};

/// The fractional matching LP was infeasible; y holds the Farkas vector as "p/q" strings.
class MatchingInfeasible : public Error {
public:
    MatchingInfeasible(const std::string& msg, std::vector<std::string> y)
        : Error(msg), y_(std::move(y)) {}
    const char* kind() const noexcept override { return "MatchingInfeasible"; }
    const std::vector<std::string>& certificate() const { return y_; }

private:
    std::vector<std::string> y_;
};

}  // namespace tritile
