#include "iqro/cli.hpp"

#include <CLI11.hpp>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <random>
#include <set>

#include "iqro/error.hpp"
#include "iqro/pack_dir.hpp"
#include "iqro/progress_store.hpp"
#include "iqro/quiz_engine.hpp"
#include "iqro/scaffold.hpp"
#include "iqro/session_service.hpp"

namespace fs = std::filesystem;

namespace iqro::cli {

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kIo:
    case ErrorCode::kCorrupt:
      return kExitIo;
    case ErrorCode::kSyntax:
    case ErrorCode::kSchema:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kDanglingRef:
    case ErrorCode::kBadVersion:
      return kExitValidation;
    default:
      return kExitUsage;
  }
}

void print_issue(std::ostream& out, const char* severity, const ValidationIssue& issue) {
  out << severity << " " << issue.code << " " << issue.path << ": " << issue.message << "\n";
}

int cmd_validate(const std::string& dir, bool as_json, std::ostream& out, std::ostream& err) {
  ValidationReport report;
  try {
    report = load_pack_dir(dir).report;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) {
      err << "error: " << e.what() << "\n";
      return kExitIo;
    }
    report.errors.push_back({std::string(to_string(e.code())), "pack.json", e.what()});
  }
  if (as_json) {
    out << report_to_json(report) << "\n";
  } else {
    for (const auto& issue : report.errors) print_issue(out, "error", issue);
    for (const auto& issue : report.warnings) print_issue(out, "warning", issue);
    out << report.errors.size() << " error(s), " << report.warnings.size() << " warning(s)\n";
  }
  return report.loadable() ? kExitOk : kExitValidation;
}

int cmd_stats(const std::string& dir, std::ostream& out) {
  const PackDir loaded = load_pack_dir(dir);
  const ContentPack& pack = loaded.pack;
  std::size_t lessons = 0, pages = 0;
  for (const auto& volume : pack.volumes) {
    lessons += volume.lessons.size();
    for (const auto& lesson : volume.lessons) pages += lesson.pages.size();
  }
  std::set<std::string> letters, audio;
  for (const auto& [id, item] : pack.items) {
    letters.insert(item.base_letter);
    audio.insert(item.audio.path);
  }
  for (const auto& letter : pack.alphabet) audio.insert(letter.audio.path);
  out << "title: " << pack.title << "\n"
      << "volumes: " << pack.volumes.size() << "\n"
      << "lessons: " << lessons << "\n"
      << "pages: " << pages << "\n"
      << "items: " << pack.items.size() << "\n"
      << "base_letters: " << letters.size() << "\n"
      << "audio_assets: " << audio.size() << "\n";
  return kExitOk;
}

struct DrillOptions {
  std::string dir;
  int volume = 1;
  int lesson = 1;
  std::optional<std::uint64_t> seed;
  int questions = QuizConfig{}.num_questions;
  int options = QuizConfig{}.num_options;
  std::string mode = "audio_to_glyph";
  std::string learner = "guest";
  std::string data_dir = "data";
};

int cmd_drill(const DrillOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  const PackDir loaded = load_pack_dir(opts.dir);
  if (!loaded.report.loadable()) {
    for (const auto& issue : loaded.report.errors) print_issue(err, "error", issue);
    return kExitValidation;
  }
  const ContentPack& pack = loaded.pack;
  const LessonRef ref{opts.volume, opts.lesson};

  QuizConfig config;
  config.num_questions = opts.questions;
  config.num_options = opts.options;
  config.mode = parse_quiz_mode(opts.mode);
  config.seed = opts.seed ? *opts.seed : (std::uint64_t{std::random_device{}()} << 32) |
                                             std::random_device{}();

  const fs::path progress_file = progress_path(opts.data_dir, opts.learner);
  ProgressRecord progress = load_progress(progress_file);
  progress.learner = opts.learner;
  if (!is_unlocked(progress, pack, ref)) {
    err << "error: lesson " << ref.volume << "/" << ref.lesson
        << " is locked until the previous lesson is mastered\n";
    return kExitUsage;
  }

  QuizSession session = start_quiz(pack, ref, config);
  const Volume& volume = pack.volumes[ref.volume - 1];
  out << volume.title << " / " << lesson_at(pack, ref).title << ": "
      << config.num_questions << " questions (" << to_string(config.mode) << ", seed "
      << config.seed << ")\n";

  while (session.state() == QuizState::kInProgress) {
    const QuestionView view = current_question(session);
    const Question& question = session.questions[session.cursor()];
    out << "\nQuestion " << view.number << "/" << view.total << "\n";
    if (view.prompt_audio) {
      out << "  Listen: " << view.prompt_audio->path << " ("
          << lookup_item(pack, question.target_id).translit << ")\n";
    } else {
      out << "  Read: " << *view.prompt_text << "\n";
    }
    for (std::size_t i = 0; i < view.options.size(); ++i) {
      out << "  [" << i << "] " << view.options[i].display << "\n";
    }

    int chosen = -1;
    for (;;) {
      out << "Answer> " << std::flush;
      std::string line;
      if (!std::getline(in, line)) {
        out << "\n";
        err << "error: input ended before the quiz finished\n";
        return kExitIo;
      }
      try {
        std::size_t used = 0;
        chosen = std::stoi(line, &used);
        while (used < line.size() && std::isspace(static_cast<unsigned char>(line[used]))) ++used;
        if (used == line.size() && chosen >= 0 &&
            chosen < static_cast<int>(view.options.size())) {
          break;
        }
      } catch (const std::exception&) {
      }
      out << "  Enter a number from 0 to " << view.options.size() - 1 << "\n";
    }

    auto [feedback, next] = submit_answer(session, chosen);
    session = std::move(next);
    out << "  " << render_message(feedback.message_key);
    if (feedback.verdict == Verdict::kWrong) {
      out << " (correct: [" << question.correct_index << "] " << feedback.correct_option.display
          << ")";
    }
    out << "\n";
  }

  const QuizResult result = finish(session);
  out << "\nResult: " << result.correct_count << "/" << result.total << " correct, "
      << (result.mastered ? "mastered" : "not mastered") << "\n";
  save_progress(record_result(progress, ref, result, config.seed), progress_file);
  out << "Progress saved to " << progress_file.string() << "\n";
  return kExitOk;
}

int cmd_serve(const std::string& dir, const std::string& bind, const std::string& data_dir,
              std::ostream& out, std::ostream& err) {
  PackDir loaded = load_pack_dir(dir);
  if (!loaded.report.loadable()) {
    for (const auto& issue : loaded.report.errors) print_issue(err, "error", issue);
    err << "refusing to serve an invalid pack\n";
    return kExitValidation;
  }
  parse_bind_address(bind);
  ServiceConfig config;
  config.pack_path = dir;
  config.data_dir = data_dir;
  config.bind_address = bind;
  SessionService service(std::move(loaded), config);
  out << "Serving '" << service.pack().title << "' on http://" << bind << "\n" << std::flush;
  if (!service.run()) {
    err << "error: cannot bind " << bind << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_new_pack(const std::string& dir, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_empty(dir, ec)) {
    err << "error: " << dir << " is not empty; refusing to scaffold into it\n";
    return kExitUsage;
  }
  scaffold_pack(dir);
  out << "Created pack in " << dir << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Hijaiyah lesson pack engine"};
  app.name("iqro");
  app.require_subcommand(1);

  std::string dir;
  bool as_json = false;
  auto* validate = app.add_subcommand("validate", "Validate a pack directory");
  validate->add_option("pack_dir", dir, "Pack directory")->required();
  validate->add_flag("--json", as_json, "Print the report as JSON");

  auto* stats = app.add_subcommand("stats", "Print pack statistics");
  stats->add_option("pack_dir", dir, "Pack directory")->required();

  DrillOptions drill_opts;
  auto* drill = app.add_subcommand("drill", "Run a multiple-choice drill in the terminal");
  drill->add_option("pack_dir", drill_opts.dir, "Pack directory")->required();
  drill->add_option("--volume", drill_opts.volume, "Volume index (1-based)")->required();
  drill->add_option("--lesson", drill_opts.lesson, "Lesson ordinal (1-based)")->required();
  drill->add_option("--seed", drill_opts.seed, "Question generator seed");
  drill->add_option("--questions", drill_opts.questions, "Number of questions");
  drill->add_option("--options", drill_opts.options, "Options per question");
  drill->add_option("--mode", drill_opts.mode, "audio_to_glyph or glyph_to_translit");
  drill->add_option("--learner", drill_opts.learner, "Learner name for progress");
  drill->add_option("--data-dir", drill_opts.data_dir, "Directory holding progress files");

  std::string bind = kDefaultBindAddress;
  std::string data_dir = "data";
  auto* serve = app.add_subcommand("serve", "Serve the pack over local HTTP");
  serve->add_option("pack_dir", dir, "Pack directory")->required();
  serve->add_option("--bind", bind, "host:port to listen on");
  serve->add_option("--data-dir", data_dir, "Directory holding progress files");

  auto* new_pack = app.add_subcommand("new-pack", "Scaffold a minimal valid pack");
  new_pack->add_option("dir", dir, "Target directory (must be empty or absent)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(dir, as_json, out, err);
    if (*stats) return cmd_stats(dir, out);
    if (*drill) return cmd_drill(drill_opts, in, out, err);
    if (*serve) return cmd_serve(dir, bind, data_dir, out, err);
    if (*new_pack) return cmd_new_pack(dir, out, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace iqro::cli
