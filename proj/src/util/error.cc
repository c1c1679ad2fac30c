#include "riskbench/util/error.h"

#include <utility>

namespace riskbench {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kBadTimestamp: return "BadTimestamp";
    case ErrorCode::kDuplicatePost: return "DuplicatePost";
    case ErrorCode::kBadLabel: return "BadLabel";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyTimeline: return "EmptyTimeline";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kZeroPosts: return "ZeroPosts";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kDegenerateSplit: return "DegenerateSplit";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kScorerFailure: return "ScorerFailure";
    case ErrorCode::kMissingLabel: return "MissingLabel";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kStateRegression: return "StateRegression";
    case ErrorCode::kMissingItem: return "MissingItem";
    case ErrorCode::kUnmappedSymptom: return "UnmappedSymptom";
    case ErrorCode::kMissingPersona: return "MissingPersona";
    case ErrorCode::kUnnormalizedInput: return "UnnormalizedInput";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kDegenerateX: return "DegenerateX";
    case ErrorCode::kInsufficientModels: return "InsufficientModels";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      message_(message) {}

SchemaError::SchemaError(ErrorCode code, std::string path,
                         const std::string& reason)
    : Error(code, (path.empty() ? std::string("/") : path) + ": " + reason),
      path_(std::move(path)),
      reason_(reason) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace riskbench
