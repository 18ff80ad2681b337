#pragma once

#include <stdexcept>
#include <string>

namespace uw {

enum class ErrorCode {
    NonPositiveLength,
    TriangleInequalityViolated,
    Disconnected1Skeleton,
    SourceNotOnComplex,
    EmptySubset,
    TruncationTooSmall,
    NonNormalSubgroup,
    LiftLeavesTruncation,
    BadParam,
    NotGridSurface,
    InvalidPolygon,
    PreconditionUnmet,
    NotVirtuallyCyclic,
    SimplexTooLarge,
    FiberBoundViolated,
    IsDisk,
    ArcNotSimple,
    InfiniteIntersection,
    CaseDetectionAmbiguous,
    ArcsIntersect,
    UnsupportedTopology,
    CertificateFailed,
    ParseError,
    ResourceLimit,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace uw
