#ifndef RISKBENCH_UTIL_ERROR_H_
#define RISKBENCH_UTIL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace riskbench {

// Every failure raised by the library carries one of these codes so callers
// (and the CLI exit-code mapping) can branch without string matching.
enum class ErrorCode {
  kMalformedInput,
  kBadTimestamp,
  kDuplicatePost,
  kBadLabel,
  kEmptyCorpus,
  kEmptyTimeline,
  kEmptyInput,
  kBadMagic,
  kTruncatedFile,
  kDimMismatch,
  kZeroPosts,
  kSingleClass,
  kDegenerateSplit,
  kLengthMismatch,
  kOutOfRange,
  kScorerFailure,
  kMissingLabel,
  kSchemaViolation,
  kStateRegression,
  kMissingItem,
  kUnmappedSymptom,
  kMissingPersona,
  kUnnormalizedInput,
  kUnknownLabel,
  kDegenerateX,
  kInsufficientModels,
  kInvalidConfig,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The message without the code-name prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

// Schema failures also report where in the document the problem sits, as a
// JSON pointer ("/turns/2/evaluation/confidence").
class SchemaError : public Error {
 public:
  SchemaError(ErrorCode code, std::string path, const std::string& reason);

  const std::string& path() const noexcept { return path_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string path_;
  std::string reason_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace riskbench

#endif  // RISKBENCH_UTIL_ERROR_H_
