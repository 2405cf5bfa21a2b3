#include "ahp/error.hpp"

namespace ahp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::MissingPair: return "MissingPair";
    case ErrorCode::DuplicatePair: return "DuplicatePair";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::DiagonalJudgment: return "DiagonalJudgment";
    case ErrorCode::NotReciprocal: return "NotReciprocal";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::ElementInBothSides: return "ElementInBothSides";
    case ErrorCode::InvalidRho: return "InvalidRho";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::MissingMatrix: return "MissingMatrix";
    case ErrorCode::InvalidHierarchy: return "InvalidHierarchy";
    case ErrorCode::InvalidNetwork: return "InvalidNetwork";
    case ErrorCode::BadClusterWeights: return "BadClusterWeights";
  }
  return "Unknown";
}

}  // namespace ahp
