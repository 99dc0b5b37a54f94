#include "cxr/error.hpp"

namespace cxr {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kMalformedHeader: return "malformed_header";
    case ErrorCode::kUnsupportedBitDepth: return "unsupported_bit_depth";
    case ErrorCode::kTruncatedPayload: return "truncated_payload";
    case ErrorCode::kUnsupportedFormat: return "unsupported_format";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kDegenerateInput: return "degenerate_input";
    case ErrorCode::kSingularFit: return "singular_fit";
    case ErrorCode::kMalformedCsv: return "malformed_csv";
    case ErrorCode::kDuplicatePath: return "duplicate_path";
    case ErrorCode::kUnknownLabel: return "unknown_label";
    case ErrorCode::kClassTooSmall: return "class_too_small";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace cxr
