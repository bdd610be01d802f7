#ifndef ECTL_ERRORS_HPP
#define ECTL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ectl {

// Violated caller contract: maps to CLI exit code 1.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Anything that indicates a bug or a broken internal assumption: exit code 2.
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroSpectrum : PreconditionError {
    ZeroSpectrum() : PreconditionError("spectrum has zero N-norm") {}
};

struct NoValidK : PreconditionError {
    explicit NoValidK(const std::string& what) : PreconditionError(what) {}
};

struct TauTooLarge : PreconditionError {
    explicit TauTooLarge(const std::string& what) : PreconditionError(what) {}
};

struct DegenerateState : PreconditionError {
    explicit DegenerateState(const std::string& what) : PreconditionError(what) {}
};

struct BacktrackFailed : PreconditionError {
    explicit BacktrackFailed(const std::string& what) : PreconditionError(what) {}
};

struct AlreadyAtPole : PreconditionError {
    AlreadyAtPole() : PreconditionError("state already equals e3") {}
};

struct DegreeInsufficient : PreconditionError {
    explicit DegreeInsufficient(const std::string& what) : PreconditionError(what) {}
};

struct EpsUnderflow : PreconditionError {
    explicit EpsUnderflow(const std::string& what) : PreconditionError(what) {}
};

struct ControlTooLarge : PreconditionError {
    explicit ControlTooLarge(const std::string& what) : PreconditionError(what) {}
};

struct NewtonDiverged : PreconditionError {
    explicit NewtonDiverged(const std::string& what) : PreconditionError(what) {}
};

struct EpsTooLarge : PreconditionError {
    explicit EpsTooLarge(const std::string& what) : PreconditionError(what) {}
};

struct DomainViolation : PreconditionError {
    explicit DomainViolation(const std::string& what) : PreconditionError(what) {}
};

struct ScheduleError : PreconditionError {
    explicit ScheduleError(const std::string& what) : PreconditionError(what) {}
};

struct ParseError : PreconditionError {
    explicit ParseError(const std::string& what) : PreconditionError(what) {}
};

} // namespace ectl

#endif
