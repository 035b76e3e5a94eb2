#include "hslab/errors.hpp"

namespace hslab {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateParams: return "degenerate-params";
        case ErrorCode::ZeroSpeed: return "zero-speed";
        case ErrorCode::DegenerateCurve: return "degenerate-curve";
        case ErrorCode::CoincidentMarkers: return "coincident-markers";
        case ErrorCode::NoInterface: return "no-interface";
        case ErrorCode::AmbiguousTopology: return "ambiguous-topology";
        case ErrorCode::UnstableStep: return "unstable-step";
        case ErrorCode::NoConvergence: return "no-convergence";
        case ErrorCode::SelfIntersection: return "self-intersection";
        case ErrorCode::InsufficientData: return "insufficient-data";
        case ErrorCode::DomainTooSmall: return "domain-too-small";
        case ErrorCode::ConfigInvalid: return "config-invalid";
        case ErrorCode::MissingArtifact: return "missing-artifact";
        case ErrorCode::MalformedCsv: return "malformed-csv";
        case ErrorCode::MismatchedInitialCondition: return "mismatched-initial-condition";
        case ErrorCode::Io: return "io-error";
    }
    return "unknown-error";
}

} // namespace hslab
