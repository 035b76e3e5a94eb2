#pragma once

#include <stdexcept>
#include <string>

namespace hslab {

enum class ErrorCode {
    DegenerateParams,
    ZeroSpeed,
    DegenerateCurve,
    CoincidentMarkers,
    NoInterface,
    AmbiguousTopology,
    UnstableStep,
    NoConvergence,
    SelfIntersection,
    InsufficientData,
    DomainTooSmall,
    ConfigInvalid,
    MissingArtifact,
    MalformedCsv,
    MismatchedInitialCondition,
    Io,
};

const char* to_string(ErrorCode code);

/// All solver and harness failures are reported through this type so the
/// CLI can map them onto exit codes.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace hslab
