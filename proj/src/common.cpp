#include "gbrvfl/common.hpp"

namespace gbrvfl {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::NonNumericFeature: return "NonNumericFeature";
    case ErrorKind::SingleClass: return "SingleClass";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::CorruptFile: return "CorruptFile";
    case ErrorKind::TargetLarger: return "TargetLarger";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace gbrvfl
