#include "grayenh/error.hpp"

namespace grayenh {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonIncreasingBreakpoints: return "NonIncreasingBreakpoints";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::GrayScaleMismatch: return "GrayScaleMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::DegenerateWeight: return "DegenerateWeight";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ConstantImage: return "ConstantImage";
    case ErrorCode::InsufficientRange: return "InsufficientRange";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedData: return "MalformedData";
    case ErrorCode::TruncatedData: return "TruncatedData";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail,
             std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail),
      index_(index) {}

}  // namespace grayenh
