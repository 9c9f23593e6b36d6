// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <arpa/inet.h>
#include <netinet/in.h>
#include <signal.h>
#include <sys/socket.h>
#include <unistd.h>
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "iqro/error.hpp"
#include "iqro/lesson_engine.hpp"
#include "iqro/pack_parser.hpp"
#include "iqro/progress_store.hpp"
#include "iqro/quiz_engine.hpp"
#include "service_harness.hpp"
#include "test_support.hpp"

using namespace iqro;
namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

// Collects failures for one criterion; keeps only the first few messages.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (messages_.size() < 5) messages_.push_back(what);
    }
  }
  bool passed() const { return failures_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::string s = std::to_string(checks_ - failures_) + "/" + std::to_string(checks_) + " checks";
    for (const auto& m : messages_) s += "\n      - " + m;
    return s;
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::vector<std::string> messages_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class Fn>
std::optional<ErrorCode> error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// 1. Pack integrity
void pack_integrity(Check& c) {
  const auto start = Clock::now();
  const PackDir ref = load_pack_dir(testing::reference_pack_dir());
  c.expect(ref.pack.volumes.size() == 4, "reference pack has 4 volumes");
  c.expect(ref.report.errors.empty(), "reference pack validates with 0 errors");
  c.expect(ref.report.warnings.empty(), "reference pack has no warnings");

  // Who owns each audio file, for naming the affected item.
  std::map<std::string, std::string> owner;
  for (std::size_t i = 0; i < ref.pack.alphabet.size(); ++i) {
    owner[ref.pack.alphabet[i].audio.path] = "alphabet[" + std::to_string(i) + "]";
  }
  for (const auto& [id, item] : ref.pack.items) owner[item.audio.path] = "items." + id;
  c.expect(owner.size() == ref.asset_listing.size(), "every asset is owned by exactly one entry");

  testing::TempDir tmp;
  const fs::path copy = tmp.path() / "pack";
  testing::copy_pack(testing::reference_pack_dir(), copy);
  const fs::path parked = tmp.path() / "parked.wav";
  for (const auto& asset : ref.asset_listing) {
    fs::rename(copy / asset, parked);
    const PackDir damaged = load_pack_dir(copy);
    fs::rename(parked, copy / asset);
    const auto& errors = damaged.report.errors;
    c.expect(errors.size() == 1, "exactly one error after deleting " + asset);
    if (errors.size() == 1) {
      c.expect(errors[0].code == kMissingAudio, "MISSING_AUDIO for " + asset);
      c.expect(errors[0].path == owner[asset], "error names " + owner[asset] + " for " + asset);
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s < 5 s");
}

// 2. Round trip
void round_trip(Check& c) {
  const auto start = Clock::now();
  testing::PackGenerator gen(0xA11F);
  for (int i = 0; i < 500; ++i) {
    const ContentPack pack = gen.next();
    const std::string first = serialize_pack(pack);
    c.expect(serialize_pack(pack) == first, "serialize is byte-deterministic (pack " + std::to_string(i) + ")");
    const ContentPack back = parse_pack(first);
    c.expect(back == pack, "parse(serialize(p)) == p (pack " + std::to_string(i) + ")");
    c.expect(serialize_pack(back) == first, "serialize fixed point (pack " + std::to_string(i) + ")");
  }
  const ContentPack& ref = testing::reference_pack().pack;
  const std::string ref_text = serialize_pack(ref);
  c.expect(serialize_pack(parse_pack(ref_text)) == ref_text, "reference pack fixed point");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s < 30 s");
}

// 3. Navigation
std::vector<MenuAction> action_alphabet(const ContentPack& pack) {
  std::vector<MenuAction> out = {action::SelectFile{}, action::SelectHowTo{}, action::SelectAlphabet{},
                                 action::SelectAbout{}, action::NextPage{},   action::PrevPage{},
                                 action::Back{},        action::Exit{}};
  for (const auto& ref : all_lessons(pack)) {
    out.push_back(action::SelectLesson{ref.volume, ref.lesson});
    out.push_back(action::SelectTest{ref.volume, ref.lesson});
  }
  for (auto [v, l] : {std::pair{0, 1}, {1, 0}, {5, 1}, {1, 99}}) {
    out.push_back(action::SelectLesson{v, l});
    out.push_back(action::SelectTest{v, l});
  }
  return out;
}

bool is_documented(ErrorCode code) {
  return code == ErrorCode::kBadTransition || code == ErrorCode::kUnknownLesson;
}

void navigation(Check& c) {
  const ContentPack& pack = testing::reference_pack().pack;
  const auto actions = action_alphabet(pack);

  std::vector<AppState> reachable;
  std::deque<AppState> frontier{state::Home{}};
  auto seen = [&](const AppState& s) {
    return std::find(reachable.begin(), reachable.end(), s) != reachable.end();
  };
  while (!frontier.empty()) {
    AppState s = frontier.front();
    frontier.pop_front();
    if (seen(s)) continue;
    reachable.push_back(s);
    if (std::holds_alternative<state::Exited>(s)) continue;
    for (const auto& a : actions) {
      try {
        const AppState next = navigate(pack, s, a);
        c.expect(is_valid_state(pack, next), describe(s) + " --" + describe(a) + "--> invalid state");
        if (!seen(next)) frontier.push_back(next);
      } catch (const Error& e) {
        c.expect(is_documented(e.code()), describe(s) + " x " + describe(a) + " raised " +
                                              std::string(to_string(e.code())));
      }
    }
  }
  std::size_t lesson_pages = 0;
  for (const auto& ref : all_lessons(pack)) lesson_pages += lesson_at(pack, ref).pages.size();
  // Home, FileInfo, HowTo, AlphabetChart, About, Exited, every page, every quiz entry.
  c.expect(reachable.size() == 6 + lesson_pages + all_lessons(pack).size(),
           "reachable state count " + std::to_string(reachable.size()));

  for (const auto& s : reachable) {
    c.expect(is_valid_state(pack, s), "reachable state valid: " + describe(s));
    if (std::holds_alternative<state::Exited>(s)) {
      for (const auto& a : actions) {
        c.expect(error_of([&] { navigate(pack, s, a); }) == ErrorCode::kBadTransition,
                 "Exited is terminal");
      }
      continue;
    }
    bool exits = false;
    for (const auto& a1 : actions) {
      AppState mid;
      try {
        mid = navigate(pack, s, a1);
      } catch (const Error&) {
        continue;
      }
      if (std::holds_alternative<state::Exited>(mid)) {
        exits = true;
        break;
      }
      for (const auto& a2 : actions) {
        try {
          if (std::holds_alternative<state::Exited>(navigate(pack, mid, a2))) exits = true;
        } catch (const Error&) {
        }
      }
      if (exits) break;
    }
    c.expect(exits, "Exited reachable in <= 2 actions from " + describe(s));
  }

  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
  for (int run = 0; run < 1000; ++run) {
    AppState s = state::Home{};
    for (int step = 0; step < 30 && !std::holds_alternative<state::Exited>(s); ++step) {
      const MenuAction& a = actions[pick(rng)];
      try {
        s = navigate(pack, s, a);
      } catch (const Error& e) {
        c.expect(is_documented(e.code()), "random walk raised " + std::string(to_string(e.code())));
      } catch (const std::exception& e) {
        c.expect(false, std::string("random walk raised undocumented ") + e.what());
      }
      c.expect(is_valid_state(pack, s), "random walk state valid");
    }
  }
}

// 4. Lesson binding
void lesson_binding(Check& c) {
  const PackDir& ref = testing::reference_pack();
  const ContentPack& pack = ref.pack;
  long cells = 0;
  for (const auto& lref : all_lessons(pack)) {
    const Lesson& lesson = lesson_at(pack, lref);
    for (std::size_t p = 0; p < lesson.pages.size(); ++p) {
      const state::LessonView view{lref.volume, lref.lesson, static_cast<int>(p + 1)};
      const Page& page = lesson.pages[p];
      for (std::size_t r = 0; r < page.rows.size(); ++r) {
        for (std::size_t col = 0; col < page.rows[r].size(); ++col) {
          ++cells;
          const AssetRef& audio = tap_item(pack, view, static_cast<int>(r + 1), static_cast<int>(col + 1));
          c.expect(ref.asset_listing.contains(audio.path), "tap audio listed: " + audio.path);
          c.expect(audio == lookup_item(pack, page.rows[r][col]).audio,
                   "tap returns the glyph's own audio at " + describe(AppState{view}));
        }
        c.expect(error_of([&] {
                   tap_item(pack, view, static_cast<int>(r + 1), static_cast<int>(page.rows[r].size() + 1));
                 }) == ErrorCode::kIndex,
                 "column past row end is E_INDEX");
      }
      c.expect(error_of([&] { tap_item(pack, view, static_cast<int>(page.rows.size() + 1), 1); }) ==
                   ErrorCode::kIndex,
               "row past page end is E_INDEX");
    }
  }
  c.expect(cells > 0, "reference pack has page cells");
}

// 5. Quiz determinism
void quiz_determinism(Check& c) {
  const ContentPack& pack = testing::reference_pack().pack;
  QuizConfig golden_config;
  golden_config.seed = 42;
  const std::string golden = read_file(testing::golden_dir() / "quiz_seed42_iqro1_materi1.json");
  c.expect(transcript_json(start_quiz(pack, {1, 1}, golden_config)) == golden,
           "seed 42 Iqro' 1 materi 1 matches the frozen golden transcript");

  std::mt19937_64 rng(5);
  const auto lessons = all_lessons(pack);
  for (int i = 0; i < 200; ++i) {
    QuizConfig config;
    config.seed = rng();
    config.num_questions = 1 + static_cast<int>(rng() % 20);
    config.mode = rng() % 2 ? QuizMode::kAudioToGlyph : QuizMode::kGlyphToTranslit;
    const LessonRef ref = lessons[rng() % lessons.size()];
    QuizSession a = start_quiz(pack, ref, config, "a");
    QuizSession b = start_quiz(pack, ref, config, "b");
    c.expect(transcript_json(a) == transcript_json(b), "identical transcripts");
    b.session_id = a.session_id;
    c.expect(a == b, "structurally identical sessions");
  }
}

// 6. Quiz correctness
void quiz_correctness(Check& c) {
  const ContentPack& pack = testing::reference_pack().pack;
  const auto lessons = all_lessons(pack);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 2000; ++i) {
    QuizConfig config;
    config.seed = rng();
    config.num_questions = 1 + static_cast<int>(rng() % 15);
    config.num_options = 2 + static_cast<int>(rng() % 3);
    config.mode = rng() % 2 ? QuizMode::kAudioToGlyph : QuizMode::kGlyphToTranslit;
    config.mastery_threshold = static_cast<double>(1 + rng() % 100) / 100.0;
    const LessonRef ref = lessons[rng() % lessons.size()];

    QuizSession s = start_quiz(pack, ref, config);
    const auto pool = candidate_pool(pack, ref, config.num_options);
    std::set<std::string> pool_ids;
    for (const auto& item : pool) pool_ids.insert(item.id);
    c.expect(static_cast<int>(s.questions.size()) == config.num_questions, "question count");

    for (const auto& q : s.questions) {
      int hits = 0;
      std::set<std::string> ids;
      for (const auto& o : q.options) {
        hits += o.id == q.target_id;
        ids.insert(o.id);
        c.expect(pool_ids.contains(o.id), "option drawn from pool");
      }
      c.expect(hits == 1, "exactly one correct option");
      c.expect(ids.size() == q.options.size(), "options distinct");
      c.expect(static_cast<int>(q.options.size()) == config.num_options, "option count");
      c.expect(q.options[q.correct_index].id == q.target_id, "correct_index points at target");
    }

    int wrong = 0;
    while (s.state() == QuizState::kInProgress) {
      const int chosen = static_cast<int>(rng() % config.num_options);
      const int key = s.questions[s.cursor()].correct_index;
      auto [feedback, next] = submit_answer(s, chosen);
      c.expect((feedback.verdict == Verdict::kCorrect) == (chosen == key), "verdict iff chosen == correct");
      wrong += feedback.verdict == Verdict::kWrong;
      s = std::move(next);
    }
    const QuizResult r = finish(s);
    c.expect(r.correct_count + wrong == config.num_questions, "score conservation");
    const double ratio = static_cast<double>(r.correct_count) / r.total;
    c.expect(r.mastered == (ratio >= config.mastery_threshold), "mastered iff ratio >= threshold");

    QuizSession perfect = start_quiz(pack, ref, config);
    while (perfect.state() == QuizState::kInProgress) {
      perfect = submit_answer(perfect, perfect.questions[perfect.cursor()].correct_index).second;
    }
    c.expect(finish(perfect).mastered, "all-correct run is mastered");
  }

  // Position of the correct option over 10 000 seeds, 4 options.
  const auto pool = candidate_pool(pack, {1, 3}, 4);
  std::array<int, 4> positions{};
  for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
    SplitMix64 rng64(seed);
    ++positions[generate_question(rng64, pool, pool[0], QuizMode::kAudioToGlyph, 4).correct_index];
  }
  for (int p = 0; p < 4; ++p) {
    const double freq = positions[p] / 10'000.0;
    c.expect(std::abs(freq - 0.25) <= 0.02,
             "position " + std::to_string(p) + " frequency " + std::to_string(freq) + " within 0.25 +/- 0.02");
  }
}

// 7. Progress
void progress(Check& c) {
  testing::TempDir tmp;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    ProgressRecord r;
    r.learner = "learner" + std::to_string(i);
    r.lock_mode = rng() % 2;
    const int n = static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) {
      ProgressEntry e;
      e.attempts = static_cast<int>(rng() % 50);
      e.best_score = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      e.mastered = rng() % 2;
      e.last_seed = rng();
      r.entries[{1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 9)}] = e;
    }
    const fs::path file = progress_path(tmp.path(), r.learner);
    save_progress(r, file);
    c.expect(load_progress(file) == r, "save/load round trip " + r.learner);
  }

  for (int run = 0; run < 200; ++run) {
    ProgressRecord p;
    bool ever = false;
    double best = 0.0;
    for (int step = 0; step < 25; ++step) {
      const int total = 1 + static_cast<int>(rng() % 12);
      const int correct = static_cast<int>(rng() % (total + 1));
      const double threshold = static_cast<double>(1 + rng() % 100) / 100.0;
      const QuizResult result{correct, total, is_mastered(correct, total, threshold)};
      ever = ever || result.mastered;
      best = std::max(best, result.ratio());
      p = record_result(p, {2, 3}, result, rng());
      const auto& e = p.entries.at({2, 3});
      c.expect(e.mastered == ever, "mastery monotone");
      c.expect(e.best_score == best, "best score is the running max");
      c.expect(e.attempts == step + 1, "attempts count results");
    }
  }

  // Three lessons: (1,1), (1,2), (2,1).
  ContentPack pack;
  pack.alphabet.push_back({"alif", "ا", "alif", {"assets/audio/alif.wav"}});
  pack.items.emplace("a", GlyphItem{"a", "ا", "a", "alif", {"assets/audio/alif.wav"}, {}});
  const Lesson l{"l", "", {Page{{{"a"}}}}};
  Lesson l1 = l, l2 = l, l3 = l;
  l1.id = "l1", l2.id = "l2", l3.id = "l3";
  pack.volumes = {Volume{1, "v1", {l1, l2}}, Volume{2, "v2", {l3}}};
  const std::vector<LessonRef> order = {{1, 1}, {1, 2}, {2, 1}};
  for (int lock = 0; lock < 2; ++lock) {
    for (int mask = 0; mask < 8; ++mask) {
      ProgressRecord p;
      p.lock_mode = lock == 1;
      for (int k = 0; k < 3; ++k) {
        if (mask & (1 << k)) p.entries[order[k]].mastered = true;
      }
      for (int k = 0; k < 3; ++k) {
        const bool expected = !p.lock_mode || k == 0 || (mask & (1 << (k - 1)));
        c.expect(is_unlocked(p, pack, order[k]) == expected,
                 "lock rule lock=" + std::to_string(lock) + " mask=" + std::to_string(mask) +
                     " lesson#" + std::to_string(k));
      }
    }
  }
}

// 8. End to end
std::string run_capture(const std::string& command, int& exit_status) {
  std::string output;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) {
    exit_status = -1;
    return output;
  }
  char buffer[4096];
  while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe)) output.append(buffer, n);
  const int status = ::pclose(pipe);
  exit_status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return output;
}

int count_of(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

void end_to_end_cli(Check& c, const fs::path& tmp) {
  const ContentPack& pack = testing::reference_pack().pack;
  QuizConfig config;
  config.seed = 7;
  const QuizSession oracle = start_quiz(pack, {1, 1}, config);
  const fs::path answers = tmp / "answers.txt";
  {
    std::ofstream out(answers);
    for (const auto& q : oracle.questions) out << q.correct_index << "\n";
  }
  const fs::path data = tmp / "data";
  const std::string command = std::string("'") + IQRO_CLI_PATH + "' drill '" +
                              testing::reference_pack_dir().string() +
                              "' --volume 1 --lesson 1 --seed 7 --learner e2e --data-dir '" +
                              data.string() + "' < '" + answers.string() + "' 2>&1";
  int status = -1;
  const std::string out = run_capture(command, status);
  c.expect(status == 0, "cli drill exits 0 (got " + std::to_string(status) + ")");
  c.expect(count_of(out, "Jawaban Anda Benar") == config.num_questions,
           "\"Jawaban Anda Benar\" printed for every answer");
  c.expect(count_of(out, "Jawaban Anda Salah") == 0, "no wrong-answer feedback");
  const ProgressRecord saved = load_progress(progress_path(data, "e2e"));
  c.expect(saved.entries.contains({1, 1}) && saved.entries.at({1, 1}).mastered,
           "progress file marks Iqro' 1 materi 1 mastered");
}

int free_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  socklen_t len = sizeof addr;
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), len);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

void end_to_end_serve(Check& c, const fs::path& tmp) {
  const int port = free_port();
  const std::string bind = "127.0.0.1:" + std::to_string(port);
  const std::string command = std::string("'") + IQRO_CLI_PATH + "' serve '" +
                              testing::reference_pack_dir().string() + "' --bind " + bind +
                              " --data-dir '" + (tmp / "serve-data").string() + "' > /dev/null 2>&1 & echo $!";
  int status = -1;
  const pid_t pid = static_cast<pid_t>(std::stol(run_capture(command, status)));
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(1);
  int code = 0;
  for (int attempt = 0; attempt < 100 && code != 200; ++attempt) {
    if (auto res = client.Get("/api/pack")) code = res->status;
    if (code != 200) std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  ::kill(pid, SIGTERM);
  c.expect(code == 200, "`serve` answers GET /api/pack with 200");
}

void end_to_end_service(Check& c, const fs::path& tmp) {
  const ContentPack& pack = testing::reference_pack().pack;
  const fs::path data = tmp / "svc";
  ProgressRecord locked;
  locked.learner = "locked";
  locked.lock_mode = true;
  save_progress(locked, progress_path(data, "locked"));
  testing::ServiceHarness h(testing::reference_pack_dir(), data);

  auto expect_error = [&](const testing::ServiceHarness::Reply& r, int status, const char* code) {
    c.expect(r.status == status && r.body.is_object() && r.body["code"] == code && r.body.contains("message"),
             std::string("expected ") + std::to_string(status) + " " + code + ", got " +
                 std::to_string(r.status) + " " + r.raw);
  };

  const auto meta = h.get("/api/pack");
  c.expect(meta.status == 200 && meta.body["volumes"].size() == 4, "GET /api/pack lists 4 volumes");
  c.expect(meta.body["title"] == pack.title, "pack title passes through byte-for-byte");
  const auto alphabet = h.get("/api/alphabet");
  c.expect(alphabet.status == 200 && alphabet.body["alphabet"].size() == 28, "GET /api/alphabet");

  const auto page = h.get("/api/volumes/1/lessons/1/pages/1");
  c.expect(page.status == 200 && page.body["rows"][0][0]["id"] == "alif_fatha", "GET page (1,1,1)");
  for (const auto& row : page.body["rows"]) {
    for (const auto& cell : row) {
      const auto asset = h.get(cell["audio_url"].get<std::string>());
      c.expect(asset.status == 200 && asset.content_type == "audio/wav", "audio URL resolves");
      c.expect(asset.raw == read_file(testing::reference_pack_dir() / cell["audio"].get<std::string>()),
               "asset bytes identical to disk");
    }
  }
  expect_error(h.get("/api/volumes/9/lessons/9/pages/9"), 404, "E_UNKNOWN_LESSON");
  expect_error(h.get("/assets/audio/missing.wav"), 404, "E_NOT_FOUND");
  const auto traversal = h.service().handle("GET", "/assets/../pack.json", "");
  c.expect(traversal.status == 400 && json::parse(traversal.body)["code"] == "E_BAD_PATH",
           "\"assets/../pack.json\" rejected with 400");

  const auto fresh = h.get("/api/progress/newcomer");
  c.expect(fresh.status == 200 && fresh.body["entries"].empty(), "fresh learner has empty entries");

  const auto defaults = h.post("/api/quiz", {{"volume", 1}, {"lesson", 1}});
  c.expect(defaults.status == 201 && defaults.body["config"]["num_questions"] == 10 &&
               defaults.body["config"]["num_options"] == 4,
           "POST /api/quiz applies defaults");
  c.expect(!testing::contains_answer_key(defaults.body), "quiz start payload has no answer key");
  expect_error(h.post("/api/quiz", {{"volume", 9}, {"lesson", 1}}), 404, "E_UNKNOWN_LESSON");
  expect_error(h.post("/api/quiz", {{"volume", 1}, {"lesson", 1}, {"config", {{"num_options", 50}}}}), 422,
               "E_POOL_TOO_SMALL");
  expect_error(h.post("/api/quiz", {{"volume", 1}, {"lesson", 2}, {"learner", "locked"}}), 409, "E_LOCKED");

  QuizConfig config;
  config.seed = 99;
  const auto started =
      h.post("/api/quiz", {{"volume", 1}, {"lesson", 3}, {"learner", "e2e"}, {"config", {{"seed", 99}}}});
  const auto repeat =
      h.post("/api/quiz", {{"volume", 1}, {"lesson", 3}, {"learner", "other"}, {"config", {{"seed", 99}}}});
  c.expect(started.body["question"]["options"] == repeat.body["question"]["options"],
           "explicit seed reproduces the question list");
  const std::string id = started.body["session_id"];
  const QuizSession oracle = start_quiz(pack, {1, 3}, config);
  expect_error(h.post("/api/quiz/no-such-session/answer", {{"chosen_index", 0}}), 404, "E_UNKNOWN_SESSION");
  expect_error(h.post("/api/quiz/" + id + "/answer", {{"chosen_index", 4}}), 422, "E_BAD_OPTION");

  json last;
  for (int n = 0; n < 10; ++n) {
    const int key = oracle.questions[n].correct_index;
    const int chosen = n == 1 ? (key + 1) % 4 : key;
    const auto r = h.post("/api/quiz/" + id + "/answer", {{"chosen_index", chosen}});
    c.expect(r.status == 200, "answer accepted");
    if (n == 0) c.expect(r.body["verdict"] == "correct" && r.body["message"] == "Jawaban Anda Benar", "correct feedback");
    if (n == 1) c.expect(r.body["verdict"] == "wrong" && r.body["message"] == "Jawaban Anda Salah", "wrong feedback");
    if (r.body.contains("next_question")) {
      c.expect(!testing::contains_answer_key(r.body["next_question"]), "next question has no answer key");
    }
    last = r.body;
  }
  c.expect(last.contains("result") && last["result"]["correct_count"] == 9, "final answer carries the result");
  expect_error(h.post("/api/quiz/" + id + "/answer", {{"chosen_index", 0}}), 409, "E_SESSION_FINISHED");
  const ProgressRecord saved = load_progress(progress_path(data, "e2e"));
  c.expect(saved.entries.contains({1, 3}) && saved.entries.at({1, 3}).mastered, "progress file updated");
  const auto view = h.get("/api/progress/e2e");
  c.expect(view.status == 200 && view.body["entries"].size() == 1, "GET /api/progress reflects the quiz");
}

void end_to_end(Check& c) {
  testing::TempDir tmp;
  end_to_end_cli(c, tmp.path());
  end_to_end_serve(c, tmp.path());
  end_to_end_service(c, tmp.path());
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 pack integrity", pack_integrity},
      {"2 round-trip", round_trip},
      {"3 navigation", navigation},
      {"4 lesson binding", lesson_binding},
      {"5 quiz determinism", quiz_determinism},
      {"6 quiz correctness", quiz_correctness},
      {"7 progress", progress},
      {"8 end-to-end headless", end_to_end},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    Check check;
    const auto start = Clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("uncaught exception: ") + e.what());
    }
    const bool ok = check.passed();
    failed += !ok;
    std::printf("[%s] %-26s %.2fs  %s\n", ok ? "PASS" : "FAIL", criterion.name, seconds_since(start),
                check.summary().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
