#pragma once
#include <stdexcept>
#include <string>

namespace lorentz {

enum class ErrorCode {
    OutOfDomain,
    SignatureMismatch,
    BackendOrderTooLow,
    DegeneratePlane,
    UnsupportedIndex,
    NonpositiveWarp,
    FiberCurvatureUnknown,
    OutOfInterval,
    SampleSetEmpty,
    NotTimelike,
    NotClosedConformal,
    SingularV,
    NotOrthogonalLeaf,
    NotSpacelike,
    DegenerateJacobian,
    QuadratureTooCoarse,
    TimeOrientationClash,
    LeftChart,
    IntegratorDivergence,
    ConformalFactorVanishes,
    HypothesisUnverified,
    AmbientNotConstantCurvature,
    NotConstantHr1,
    InvalidArgument,
    ConfigParse,
    UnknownCheck,
    UnresolvedReference,
    UnsupportedFormat,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace lorentz
