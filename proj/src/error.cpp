#include "paradv/error.hpp"

namespace paradv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonIntegerParameters: return "NonIntegerParameters";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ValueOverlap: return "ValueOverlap";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyRowOrColumn: return "EmptyRowOrColumn";
    case ErrorCode::NonUnitary: return "NonUnitary";
    case ErrorCode::IndivisibleParameters: return "IndivisibleParameters";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace paradv
