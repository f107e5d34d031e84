#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kasiski {

enum class ErrorCode {
  EmptyMessage,
  EmptyKey,
  InvalidKey,
  KeyTooLong,
  MessageTooShort,
  InvalidClassBounds,
  OutOfRange,
  Io,
  Parse,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyMessage: return "EmptyMessage";
    case ErrorCode::EmptyKey: return "EmptyKey";
    case ErrorCode::InvalidKey: return "InvalidKey";
    case ErrorCode::KeyTooLong: return "KeyTooLong";
    case ErrorCode::MessageTooShort: return "MessageTooShort";
    case ErrorCode::InvalidClassBounds: return "InvalidClassBounds";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

// All library failures are reported as kasiski::Error; code() lets callers
// (the CLI in particular) map a failure onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kasiski
