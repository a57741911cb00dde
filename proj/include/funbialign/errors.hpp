#pragma once
// Error vocabulary shared by every stage of the pipeline.
//
// Every failure carries an ErrorKind; what() is "<KindName>: <detail>", which
// is the one-line diagnostic the CLI prints.

#include <stdexcept>
#include <string>
#include <string_view>

namespace funbialign {

enum class ErrorKind {
    // curves
    EmptyCurveSet,
    CurveTooShort,
    InvalidLength,
    IndexOutOfRange,
    InvalidCurve,
    GridMismatch,
    DuplicateCurveId,
    // scoring
    TooFewPortions,
    LengthMismatch,
    NonFiniteInput,
    InvalidCardinality,
    CardinalityTooLarge,
    NegativeScore,
    BiasLawViolation,
    // clustering
    SinglePortion,
    InconsistentTree,
    // simulation
    PlacementInfeasible,
    InvalidConfig,
    CurveMismatch,
    // io
    FileNotFound,
    MalformedInput,
};

std::string_view error_kind_name(ErrorKind kind);

// Internal invariant violations map to exit status 2, everything else to 1.
bool is_internal(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace funbialign
