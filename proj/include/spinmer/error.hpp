#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinmer {

enum class ErrorCode {
  UnknownKey,
  DuplicateKey,
  MissingKey,
  MalformedNumber,
  NegativeExchange,
  NegativeRepulsion,
  NotSymmetric,
  NormError,
  SmallDenominator,
  DegenerateDenominator,
  WrongFamily,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::MalformedNumber: return "MalformedNumber";
    case ErrorCode::NegativeExchange: return "NegativeExchange";
    case ErrorCode::NegativeRepulsion: return "NegativeRepulsion";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NormError: return "NormError";
    case ErrorCode::SmallDenominator: return "SmallDenominator";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::WrongFamily: return "WrongFamily";
  }
  return "Unknown";
}

/// Domain error raised by every module; `code()` identifies the failure class.
class ModelError : public std::runtime_error {
 public:
  ModelError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spinmer
