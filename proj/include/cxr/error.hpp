#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cxr {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyInput,
  kMalformedHeader,
  kUnsupportedBitDepth,
  kTruncatedPayload,
  kUnsupportedFormat,
  kDimensionMismatch,
  kDegenerateInput,
  kSingularFit,
  kMalformedCsv,
  kDuplicatePath,
  kUnknownLabel,
  kClassTooSmall,
  kIo,
};

/// Stable snake_case name used in machine-parsable CLI error lines.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cxr
