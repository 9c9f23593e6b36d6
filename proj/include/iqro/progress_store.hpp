#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "iqro/content_model.hpp"
#include "iqro/quiz_engine.hpp"

namespace iqro {

struct ProgressEntry {
  int attempts = 0;
  double best_score = 0.0;  // in [0, 1]
  bool mastered = false;    // never reset once set
  std::uint64_t last_seed = 0;

  bool operator==(const ProgressEntry&) const = default;
};

struct ProgressRecord {
  std::string learner;
  bool lock_mode = false;
  std::map<LessonRef, ProgressEntry> entries;

  bool operator==(const ProgressRecord&) const = default;
};

ProgressRecord record_result(const ProgressRecord& progress, LessonRef lesson_ref,
                             const QuizResult& result, std::uint64_t seed);

// With lock_mode off every lesson is open. With it on, a lesson opens when
// it is the pack's first lesson or the lesson before it (previous lesson of
// the volume, or last lesson of the previous volume) is mastered.
// Throws Error(kUnknownLesson).
bool is_unlocked(const ProgressRecord& progress, const ContentPack& pack,
                 LessonRef lesson_ref);

// Learner names become file names: 1-64 chars of [A-Za-z0-9_.-], not
// starting with '.'.
bool is_valid_learner_name(std::string_view learner);

// <data_dir>/progress/<learner>.json. Throws Error(kBadRequest) for invalid
// learner names.
std::filesystem::path progress_path(const std::filesystem::path& data_dir,
                                    std::string_view learner);

std::string progress_to_json(const ProgressRecord& progress);
// Throws Error(kCorrupt).
ProgressRecord progress_from_json(std::string_view text);

// An absent file yields a fresh record named after the file stem. Anything
// unreadable or malformed is Error(kCorrupt); it is never silently reset.
ProgressRecord load_progress(const std::filesystem::path& path);

// Atomic replace (temp file + rename). Throws Error(kIo).
void save_progress(const ProgressRecord& progress, const std::filesystem::path& path);

}  // namespace iqro
