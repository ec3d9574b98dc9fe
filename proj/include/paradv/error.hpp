#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace paradv {

enum class ErrorCode {
  InvalidArgument,
  NonIntegerParameters,
  Overflow,
  ValueOverlap,
  ZeroMatrix,
  DimMismatch,
  IndexOutOfRange,
  EmptyRowOrColumn,
  NonUnitary,
  IndivisibleParameters,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace paradv
