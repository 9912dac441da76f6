#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace grayenh {

enum class ErrorCode {
  InvalidParameter,
  LengthMismatch,
  NonIncreasingBreakpoints,
  DomainViolation,
  GrayScaleMismatch,
  IndexOutOfRange,
  EmptyImage,
  DegenerateWeight,
  DivisionByZero,
  ConstantImage,
  InsufficientRange,
  MalformedHeader,
  MalformedData,
  TruncatedData,
  UnsupportedFormat,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library exception. The message is prefixed with the error code name so
/// that diagnostics printed by callers always identify the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }

  /// Offending element index (breakpoints) or iteration index (enhance), if any.
  std::optional<std::size_t> index() const noexcept { return index_; }

  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> index_;
};

}  // namespace grayenh
