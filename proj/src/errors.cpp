#include "funbialign/errors.hpp"

namespace funbialign {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptyCurveSet: return "EmptyCurveSet";
        case ErrorKind::CurveTooShort: return "CurveTooShort";
        case ErrorKind::InvalidLength: return "InvalidLength";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::InvalidCurve: return "InvalidCurve";
        case ErrorKind::GridMismatch: return "GridMismatch";
        case ErrorKind::DuplicateCurveId: return "DuplicateCurveId";
        case ErrorKind::TooFewPortions: return "TooFewPortions";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::NonFiniteInput: return "NonFiniteInput";
        case ErrorKind::InvalidCardinality: return "InvalidCardinality";
        case ErrorKind::CardinalityTooLarge: return "CardinalityTooLarge";
        case ErrorKind::NegativeScore: return "NegativeScore";
        case ErrorKind::BiasLawViolation: return "BiasLawViolation";
        case ErrorKind::SinglePortion: return "SinglePortion";
        case ErrorKind::InconsistentTree: return "InconsistentTree";
        case ErrorKind::PlacementInfeasible: return "PlacementInfeasible";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::CurveMismatch: return "CurveMismatch";
        case ErrorKind::FileNotFound: return "FileNotFound";
        case ErrorKind::MalformedInput: return "MalformedInput";
    }
    return "UnknownError";
}

bool is_internal(ErrorKind kind) {
    return kind == ErrorKind::InconsistentTree || kind == ErrorKind::NegativeScore ||
           kind == ErrorKind::BiasLawViolation;
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind) {}

} // namespace funbialign
