#include "iqro/error.hpp"

namespace iqro {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownItem: return "E_UNKNOWN_ITEM";
    case ErrorCode::kUnknownLesson: return "E_UNKNOWN_LESSON";
    case ErrorCode::kSyntax: return "E_SYNTAX";
    case ErrorCode::kSchema: return "E_SCHEMA";
    case ErrorCode::kDuplicateId: return "E_DUPLICATE_ID";
    case ErrorCode::kDanglingRef: return "E_DANGLING_REF";
    case ErrorCode::kBadVersion: return "E_BAD_VERSION";
    case ErrorCode::kBadTransition: return "E_BAD_TRANSITION";
    case ErrorCode::kIndex: return "E_INDEX";
    case ErrorCode::kPoolTooSmall: return "E_POOL_TOO_SMALL";
    case ErrorCode::kBadConfig: return "E_BAD_CONFIG";
    case ErrorCode::kSessionFinished: return "E_SESSION_FINISHED";
    case ErrorCode::kSessionInProgress: return "E_SESSION_IN_PROGRESS";
    case ErrorCode::kBadOption: return "E_BAD_OPTION";
    case ErrorCode::kCorrupt: return "E_CORRUPT";
    case ErrorCode::kLocked: return "E_LOCKED";
    case ErrorCode::kUnknownSession: return "E_UNKNOWN_SESSION";
    case ErrorCode::kNotFound: return "E_NOT_FOUND";
    case ErrorCode::kBadRequest: return "E_BAD_REQUEST";
    case ErrorCode::kBadPath: return "E_BAD_PATH";
    case ErrorCode::kIo: return "E_IO";
  }
  return "E_UNKNOWN";
}

}  // namespace iqro
