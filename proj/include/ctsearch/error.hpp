#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctsearch {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kEmptyQuery,
  kDuplicateDocId,
  kVersionMismatch,
  kChecksumMismatch,
  kCorruptFile,
  kEmptyTerm,
  kUnescapableTerm,
  kHttpError,
  kMalformedResponse,
  kMissingFixture,
  kPatternSyntaxError,
  kMalformedPrediction,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception type. Every failure that crosses a module boundary
/// is reported as an Error carrying one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kEmptyQuery: return "EmptyQuery";
    case ErrorCode::kDuplicateDocId: return "DuplicateDocId";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kEmptyTerm: return "EmptyTerm";
    case ErrorCode::kUnescapableTerm: return "UnescapableTerm";
    case ErrorCode::kHttpError: return "HttpError";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kMissingFixture: return "MissingFixture";
    case ErrorCode::kPatternSyntaxError: return "PatternSyntaxError";
    case ErrorCode::kMalformedPrediction: return "MalformedPrediction";
  }
  return "Unknown";
}

}  // namespace ctsearch
