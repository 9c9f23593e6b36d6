#include "iqro/quiz_engine.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "iqro/error.hpp"

namespace iqro {

std::string_view to_string(QuizMode mode) {
  switch (mode) {
    case QuizMode::kAudioToGlyph: return "audio_to_glyph";
    case QuizMode::kGlyphToTranslit: return "glyph_to_translit";
  }
  return "audio_to_glyph";
}

QuizMode parse_quiz_mode(std::string_view name) {
  if (name == "audio_to_glyph" || name == "audio-to-glyph") return QuizMode::kAudioToGlyph;
  if (name == "glyph_to_translit" || name == "glyph-to-translit") {
    return QuizMode::kGlyphToTranslit;
  }
  throw Error(ErrorCode::kBadConfig, "unknown quiz mode '" + std::string(name) + "'");
}

void check_config(const QuizConfig& config) {
  if (config.num_questions < 1) {
    throw Error(ErrorCode::kBadConfig, "num_questions must be at least 1");
  }
  if (config.num_options < 2) {
    throw Error(ErrorCode::kBadConfig, "num_options must be at least 2");
  }
  if (!(config.mastery_threshold > 0.0 && config.mastery_threshold <= 1.0)) {
    throw Error(ErrorCode::kBadConfig, "mastery_threshold must be in (0, 1]");
  }
}

std::string_view render_message(std::string_view message_key) {
  if (message_key == kMessageCorrect) return "Jawaban Anda Benar";
  if (message_key == kMessageWrong) return "Jawaban Anda Salah";
  return message_key;
}

std::vector<GlyphItem> candidate_pool(const ContentPack& pack, LessonRef lesson_ref,
                                      int num_options) {
  const Lesson& lesson = lesson_at(pack, lesson_ref);
  auto ids = lesson_item_ids(lesson);
  if (ids.empty()) {
    throw Error(ErrorCode::kPoolTooSmall, "lesson '" + lesson.id + "' has no items");
  }
  if (static_cast<int>(ids.size()) < num_options) {
    ids = volume_item_ids(pack.volumes[lesson_ref.volume - 1]);
  }
  if (static_cast<int>(ids.size()) < num_options) {
    throw Error(ErrorCode::kPoolTooSmall,
                "only " + std::to_string(ids.size()) + " distinct items for " +
                    std::to_string(num_options) + " options");
  }
  std::vector<GlyphItem> pool;
  pool.reserve(ids.size());
  for (const auto& id : ids) pool.push_back(lookup_item(pack, id));
  return pool;
}

namespace {

QuizOption option_for(const GlyphItem& item, QuizMode mode) {
  return {item.id, mode == QuizMode::kAudioToGlyph ? item.text : item.translit};
}

}  // namespace

Question generate_question(SplitMix64& rng, std::span<const GlyphItem> pool,
                           const GlyphItem& target, QuizMode mode, int num_options) {
  std::vector<const GlyphItem*> others;
  bool has_target = false;
  for (const auto& item : pool) {
    if (item.id == target.id) {
      has_target = true;
    } else {
      others.push_back(&item);
    }
  }
  const auto needed = static_cast<std::size_t>(std::max(num_options - 1, 0));
  if (!has_target || num_options < 1 || others.size() < needed) {
    throw Error(ErrorCode::kPoolTooSmall, "pool cannot supply " +
                                              std::to_string(num_options) + " options");
  }

  for (std::size_t i = 0; i < needed; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(others.size() - i));
    std::swap(others[i], others[j]);
  }

  Question q;
  q.target_id = target.id;
  q.mode = mode;
  if (mode == QuizMode::kAudioToGlyph) {
    q.prompt_audio = target.audio;
  } else {
    q.prompt_text = target.text;
  }
  q.options.push_back(option_for(target, mode));
  for (std::size_t i = 0; i < needed; ++i) q.options.push_back(option_for(*others[i], mode));
  shuffle(std::span<QuizOption>(q.options), rng);

  const auto hit = std::find_if(q.options.begin(), q.options.end(),
                                [&](const QuizOption& o) { return o.id == target.id; });
  q.correct_index = static_cast<int>(hit - q.options.begin());
  return q;
}

QuizSession start_quiz(const ContentPack& pack, LessonRef lesson_ref,
                       const QuizConfig& config, std::string session_id) {
  check_config(config);
  const auto pool = candidate_pool(pack, lesson_ref, config.num_options);
  std::vector<std::string> targets = lesson_item_ids(lesson_at(pack, lesson_ref));

  QuizSession session;
  session.session_id = std::move(session_id);
  session.lesson_ref = lesson_ref;
  session.config = config;

  SplitMix64 rng(config.seed);
  std::size_t next_target = targets.size();
  for (int n = 0; n < config.num_questions; ++n) {
    if (next_target == targets.size()) {
      shuffle(std::span<std::string>(targets), rng);
      next_target = 0;
    }
    const GlyphItem& target = lookup_item(pack, targets[next_target++]);
    session.questions.push_back(
        generate_question(rng, pool, target, config.mode, config.num_options));
  }
  return session;
}

QuestionView current_question(const QuizSession& session) {
  if (session.state() == QuizState::kFinished) {
    throw Error(ErrorCode::kSessionFinished, "quiz is finished");
  }
  const Question& q = session.questions[session.cursor()];
  QuestionView view;
  view.number = session.cursor() + 1;
  view.total = static_cast<int>(session.questions.size());
  view.mode = q.mode;
  if (q.mode == QuizMode::kAudioToGlyph) {
    view.prompt_audio = q.prompt_audio;
  } else {
    view.prompt_text = q.prompt_text;
  }
  view.options = q.options;
  return view;
}

std::pair<Feedback, QuizSession> submit_answer(const QuizSession& session,
                                               int chosen_index) {
  if (session.state() == QuizState::kFinished) {
    throw Error(ErrorCode::kSessionFinished, "quiz is finished");
  }
  const Question& q = session.questions[session.cursor()];
  if (chosen_index < 0 || chosen_index >= static_cast<int>(q.options.size())) {
    throw Error(ErrorCode::kBadOption, "option " + std::to_string(chosen_index) +
                                           " out of range [0, " +
                                           std::to_string(q.options.size()) + ")");
  }
  const bool correct = chosen_index == q.correct_index;
  Feedback feedback{correct ? Verdict::kCorrect : Verdict::kWrong,
                    std::string(correct ? kMessageCorrect : kMessageWrong),
                    q.options[q.correct_index]};
  QuizSession next = session;
  next.answers.push_back({chosen_index, correct});
  return {std::move(feedback), std::move(next)};
}

bool is_mastered(int correct_count, int total, double threshold) {
  if (total <= 0) return false;
  return static_cast<double>(correct_count) / static_cast<double>(total) >= threshold;
}

QuizResult finish(const QuizSession& session) {
  if (session.state() != QuizState::kFinished) {
    throw Error(ErrorCode::kSessionInProgress, "quiz still has unanswered questions");
  }
  QuizResult result;
  result.total = static_cast<int>(session.questions.size());
  result.correct_count = static_cast<int>(std::count_if(
      session.answers.begin(), session.answers.end(), [](const Answer& a) { return a.correct; }));
  result.mastered =
      is_mastered(result.correct_count, result.total, session.config.mastery_threshold);
  return result;
}

std::string transcript_json(const QuizSession& session) {
  nlohmann::ordered_json root;
  root["volume"] = session.lesson_ref.volume;
  root["lesson"] = session.lesson_ref.lesson;
  root["seed"] = session.config.seed;
  root["mode"] = std::string(to_string(session.config.mode));
  root["num_questions"] = session.config.num_questions;
  root["num_options"] = session.config.num_options;
  auto questions = nlohmann::ordered_json::array();
  for (const auto& q : session.questions) {
    nlohmann::ordered_json j;
    j["target_id"] = q.target_id;
    auto ids = nlohmann::ordered_json::array();
    for (const auto& o : q.options) ids.push_back(o.id);
    j["options"] = std::move(ids);
    j["correct_index"] = q.correct_index;
    questions.push_back(std::move(j));
  }
  root["questions"] = std::move(questions);
  return root.dump(2) + "\n";
}

}  // namespace iqro
