#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iqro {

// Engine error vocabulary. The string form ("E_UNKNOWN_ITEM", ...) is part of
// the wire contract of the service and the CLI's JSON output.
enum class ErrorCode {
  kUnknownItem,
  kUnknownLesson,
  kSyntax,
  kSchema,
  kDuplicateId,
  kDanglingRef,
  kBadVersion,
  kBadTransition,
  kIndex,
  kPoolTooSmall,
  kBadConfig,
  kSessionFinished,
  kSessionInProgress,
  kBadOption,
  kCorrupt,
  kLocked,
  kUnknownSession,
  kNotFound,
  kBadRequest,
  kBadPath,
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace iqro
