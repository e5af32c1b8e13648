#include "maskobs/error.hpp"

namespace maskobs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::InconsistentDimensions: return "InconsistentDimensions";
    case ErrorCode::NotUnitTrace: return "NotUnitTrace";
    case ErrorCode::InvalidChannel: return "InvalidChannel";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotMaskable: return "NotMaskable";
    case ErrorCode::NotUnitVector: return "NotUnitVector";
    case ErrorCode::EmptyDisk: return "EmptyDisk";
    case ErrorCode::DegenerateState: return "DegenerateState";
    case ErrorCode::DegenerateLine: return "DegenerateLine";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::IdenticalPoints: return "IdenticalPoints";
    case ErrorCode::NoAffineSolution: return "NoAffineSolution";
    case ErrorCode::BadSpectrum: return "BadSpectrum";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace maskobs
