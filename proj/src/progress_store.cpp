#include "iqro/progress_store.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "iqro/atomic_file.hpp"
#include "iqro/error.hpp"

namespace fs = std::filesystem;

namespace iqro {

ProgressRecord record_result(const ProgressRecord& progress, LessonRef lesson_ref,
                             const QuizResult& result, std::uint64_t seed) {
  ProgressRecord next = progress;
  ProgressEntry& entry = next.entries[lesson_ref];
  entry.attempts += 1;
  entry.best_score = std::max(entry.best_score, std::clamp(result.ratio(), 0.0, 1.0));
  entry.mastered = entry.mastered || result.mastered;
  entry.last_seed = seed;
  return next;
}

bool is_unlocked(const ProgressRecord& progress, const ContentPack& pack,
                 LessonRef lesson_ref) {
  lesson_at(pack, lesson_ref);
  if (!progress.lock_mode) return true;

  LessonRef previous;
  if (lesson_ref.lesson > 1) {
    previous = {lesson_ref.volume, lesson_ref.lesson - 1};
  } else if (lesson_ref.volume > 1) {
    const auto& prev_volume = pack.volumes[lesson_ref.volume - 2];
    previous = {lesson_ref.volume - 1, static_cast<int>(prev_volume.lessons.size())};
  } else {
    return true;
  }
  auto it = progress.entries.find(previous);
  return it != progress.entries.end() && it->second.mastered;
}

bool is_valid_learner_name(std::string_view learner) {
  if (learner.empty() || learner.size() > 64 || learner.front() == '.') return false;
  return std::all_of(learner.begin(), learner.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

fs::path progress_path(const fs::path& data_dir, std::string_view learner) {
  if (!is_valid_learner_name(learner)) {
    throw Error(ErrorCode::kBadRequest, "invalid learner name '" + std::string(learner) + "'");
  }
  return data_dir / "progress" / (std::string(learner) + ".json");
}

std::string progress_to_json(const ProgressRecord& progress) {
  nlohmann::ordered_json root;
  root["learner"] = progress.learner;
  root["lock_mode"] = progress.lock_mode;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [ref, entry] : progress.entries) {
    nlohmann::ordered_json e;
    e["volume"] = ref.volume;
    e["lesson"] = ref.lesson;
    e["attempts"] = entry.attempts;
    e["best_score"] = entry.best_score;
    e["mastered"] = entry.mastered;
    e["last_seed"] = entry.last_seed;
    entries.push_back(std::move(e));
  }
  root["entries"] = std::move(entries);
  return root.dump(2) + "\n";
}

ProgressRecord progress_from_json(std::string_view text) {
  using nlohmann::json;
  auto corrupt = [](const std::string& why) -> Error {
    return Error(ErrorCode::kCorrupt, "corrupt progress record: " + why);
  };
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw corrupt(e.what());
  }
  try {
    ProgressRecord record;
    record.learner = root.at("learner").get<std::string>();
    record.lock_mode = root.at("lock_mode").get<bool>();
    for (const auto& e : root.at("entries")) {
      const LessonRef ref{e.at("volume").get<int>(), e.at("lesson").get<int>()};
      ProgressEntry entry;
      if (!e.at("attempts").is_number_integer() || !e.at("last_seed").is_number_unsigned() ||
          !e.at("best_score").is_number()) {
        throw corrupt("bad entry field type");
      }
      entry.attempts = e.at("attempts").get<int>();
      entry.best_score = e.at("best_score").get<double>();
      entry.mastered = e.at("mastered").get<bool>();
      entry.last_seed = e.at("last_seed").get<std::uint64_t>();
      if (entry.attempts < 0 || !(entry.best_score >= 0.0 && entry.best_score <= 1.0)) {
        throw corrupt("entry out of range");
      }
      if (!record.entries.emplace(ref, entry).second) throw corrupt("duplicate entry");
    }
    return record;
  } catch (const json::exception& e) {
    throw corrupt(e.what());
  }
}

ProgressRecord load_progress(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    if (ec) throw Error(ErrorCode::kCorrupt, "cannot stat " + path.string());
    ProgressRecord fresh;
    fresh.learner = path.stem().string();
    return fresh;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kCorrupt, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return progress_from_json(buffer.str());
}

void save_progress(const ProgressRecord& progress, const fs::path& path) {
  write_file_atomic(path, progress_to_json(progress));
}

}  // namespace iqro
