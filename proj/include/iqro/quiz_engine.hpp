#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iqro/content_model.hpp"
#include "iqro/splitmix64.hpp"

namespace iqro {

enum class QuizMode {
  kAudioToGlyph,     // hear the sound, pick the glyph
  kGlyphToTranslit,  // see the glyph, pick its pronunciation
};

std::string_view to_string(QuizMode mode);
// Accepts "audio_to_glyph" / "glyph_to_translit" (and the dashed spellings).
// Throws Error(kBadConfig).
QuizMode parse_quiz_mode(std::string_view name);

struct QuizConfig {
  int num_questions = 10;
  int num_options = 4;
  QuizMode mode = QuizMode::kAudioToGlyph;
  std::uint64_t seed = 0;
  double mastery_threshold = 0.8;

  bool operator==(const QuizConfig&) const = default;
};

// Throws Error(kBadConfig) on out-of-range fields.
void check_config(const QuizConfig& config);

struct QuizOption {
  std::string id;
  std::string display;

  bool operator==(const QuizOption&) const = default;
};

struct Question {
  std::string target_id;
  QuizMode mode = QuizMode::kAudioToGlyph;
  AssetRef prompt_audio;    // AudioToGlyph
  std::string prompt_text;  // GlyphToTranslit
  std::vector<QuizOption> options;
  int correct_index = 0;

  bool operator==(const Question&) const = default;
};

// What a learner may see: the answer key and target id are stripped.
struct QuestionView {
  int number = 1;  // 1-based
  int total = 1;
  QuizMode mode = QuizMode::kAudioToGlyph;
  std::optional<AssetRef> prompt_audio;
  std::optional<std::string> prompt_text;
  std::vector<QuizOption> options;

  bool operator==(const QuestionView&) const = default;
};

struct Answer {
  int chosen_index = 0;
  bool correct = false;

  bool operator==(const Answer&) const = default;
};

enum class QuizState { kInProgress, kFinished };

struct QuizSession {
  std::string session_id;
  LessonRef lesson_ref;
  QuizConfig config;
  std::vector<Question> questions;
  std::vector<Answer> answers;

  int cursor() const { return static_cast<int>(answers.size()); }
  QuizState state() const {
    return answers.size() == questions.size() ? QuizState::kFinished
                                              : QuizState::kInProgress;
  }
  bool operator==(const QuizSession&) const = default;
};

enum class Verdict { kCorrect, kWrong };

inline constexpr std::string_view kMessageCorrect = "answer.correct";
inline constexpr std::string_view kMessageWrong = "answer.wrong";

struct Feedback {
  Verdict verdict = Verdict::kWrong;
  std::string message_key;
  QuizOption correct_option;

  bool operator==(const Feedback&) const = default;
};

struct QuizResult {
  int correct_count = 0;
  int total = 0;
  bool mastered = false;

  double ratio() const { return total == 0 ? 0.0 : double(correct_count) / double(total); }
  bool operator==(const QuizResult&) const = default;
};

// Reference locale: "answer.correct" -> "Jawaban Anda Benar",
// "answer.wrong" -> "Jawaban Anda Salah". Unknown keys render as themselves.
std::string_view render_message(std::string_view message_key);

// Distinct lesson items, or the enclosing volume's items when the lesson
// alone cannot fill num_options. Throws kUnknownLesson / kPoolTooSmall.
std::vector<GlyphItem> candidate_pool(const ContentPack& pack, LessonRef lesson_ref,
                                      int num_options);

// Picks num_options-1 distractors from pool minus target by a partial
// Fisher-Yates over the remaining items (in pool order), puts the target
// first, then shuffles all options with a full Fisher-Yates.
// Throws kPoolTooSmall when the pool cannot supply enough distractors or
// does not contain the target.
Question generate_question(SplitMix64& rng, std::span<const GlyphItem> pool,
                           const GlyphItem& target, QuizMode mode, int num_options);

// Targets come from the lesson's own items: they are shuffled once, consumed
// in order, and reshuffled (continuing the same stream) when exhausted. One
// generator seeded with config.seed drives both target order and questions.
QuizSession start_quiz(const ContentPack& pack, LessonRef lesson_ref,
                       const QuizConfig& config, std::string session_id = {});

// Throws Error(kSessionFinished).
QuestionView current_question(const QuizSession& session);

// Throws kSessionFinished / kBadOption.
std::pair<Feedback, QuizSession> submit_answer(const QuizSession& session,
                                               int chosen_index);

// Throws Error(kSessionInProgress).
QuizResult finish(const QuizSession& session);

bool is_mastered(int correct_count, int total, double threshold);

// Canonical JSON of the generated question list; used for golden files.
std::string transcript_json(const QuizSession& session);

}  // namespace iqro
