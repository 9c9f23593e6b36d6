#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "iqro/error.hpp"
#include "iqro/lesson_engine.hpp"
#include "iqro/pack_dir.hpp"
#include "iqro/pack_parser.hpp"
#include "iqro/progress_store.hpp"
#include "iqro/quiz_engine.hpp"

namespace py = pybind11;
using namespace iqro;

namespace {

py::dict report_dict(const ValidationReport& report) {
  auto issues = [](const std::vector<ValidationIssue>& list) {
    py::list out;
    for (const auto& i : list) out.append(py::dict(py::arg("code") = i.code, py::arg("path") = i.path,
                                                   py::arg("message") = i.message));
    return out;
  };
  return py::dict(py::arg("loadable") = report.loadable(), py::arg("errors") = issues(report.errors),
                  py::arg("warnings") = issues(report.warnings));
}

py::dict option_dict(const QuizOption& o) {
  return py::dict(py::arg("id") = o.id, py::arg("display") = o.display);
}

py::dict question_dict(const QuestionView& q) {
  py::list options;
  for (const auto& o : q.options) options.append(o.display);
  py::dict out(py::arg("number") = q.number, py::arg("total") = q.total,
               py::arg("mode") = std::string(to_string(q.mode)), py::arg("options") = options);
  out["prompt_audio"] = q.prompt_audio ? py::cast(q.prompt_audio->path) : py::none();
  out["prompt_text"] = q.prompt_text ? py::cast(*q.prompt_text) : py::none();
  return out;
}

py::dict result_dict(const QuizResult& r) {
  return py::dict(py::arg("correct_count") = r.correct_count, py::arg("total") = r.total,
                  py::arg("mastered") = r.mastered, py::arg("ratio") = r.ratio());
}

template <class T>
void bind_marker(py::module_& m, const char* name) {
  py::class_<T>(m, name)
      .def(py::init<>())
      .def("__eq__", [](const T&, const T&) { return true; })
      .def("__hash__", [name](const T&) { return py::hash(py::str(name)); })
      .def("__repr__", [name](const T&) { return std::string(name) + "()"; });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Iqro' reading-course engine";

  static py::exception<Error> iqro_error(m, "IqroError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::object(iqro_error)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(iqro_error.ptr(), exc.ptr());
    }
  });

  // Content
  py::class_<ContentPack>(m, "ContentPack")
      .def_readonly("title", &ContentPack::title)
      .def_readonly("about", &ContentPack::about)
      .def_readonly("how_to", &ContentPack::how_to)
      .def_readonly("format_version", &ContentPack::format_version)
      .def("item_ids", [](const ContentPack& p) {
        std::vector<std::string> ids;
        for (const auto& [id, item] : p.items) ids.push_back(id);
        return ids;
      })
      .def("item", [](const ContentPack& p, std::string_view id) {
        const GlyphItem& g = lookup_item(p, id);
        py::dict out(py::arg("id") = g.id, py::arg("text") = g.text, py::arg("translit") = g.translit,
                     py::arg("base_letter") = g.base_letter, py::arg("audio") = g.audio.path);
        out["image"] = g.image ? py::cast(g.image->path) : py::none();
        return out;
      })
      .def("lessons", [](const ContentPack& p) {
        std::vector<std::pair<int, int>> out;
        for (const auto& r : all_lessons(p)) out.emplace_back(r.volume, r.lesson);
        return out;
      })
      .def("lesson_items", [](const ContentPack& p, int volume, int lesson) {
        return lesson_item_ids(lesson_at(p, {volume, lesson}));
      })
      .def("page_rows", [](const ContentPack& p, int volume, int lesson, int page) {
        return page_at(p, volume, lesson, page).rows;
      })
      .def("__eq__", [](const ContentPack& a, const ContentPack& b) { return a == b; });

  m.def("parse_pack", [](std::string_view text) { return parse_pack(text); }, py::arg("text"));
  m.def("serialize_pack", &serialize_pack, py::arg("pack"));
  m.def("validate_assets",
        [](const ContentPack& pack, const std::set<std::string>& listing) {
          return report_dict(validate_assets(pack, listing));
        },
        py::arg("pack"), py::arg("asset_listing"));
  m.def("load_pack_dir",
        [](const std::filesystem::path& root) {
          PackDir dir = load_pack_dir(root);
          return py::make_tuple(std::move(dir.pack), report_dict(dir.report), dir.asset_listing);
        },
        py::arg("root"), "Returns (pack, report, asset_listing).");

  // Navigation
  auto st = m.def_submodule("state");
  bind_marker<state::Home>(st, "Home");
  bind_marker<state::FileInfo>(st, "FileInfo");
  bind_marker<state::HowTo>(st, "HowTo");
  bind_marker<state::AlphabetChart>(st, "AlphabetChart");
  bind_marker<state::About>(st, "About");
  bind_marker<state::Exited>(st, "Exited");
  py::class_<state::LessonView>(st, "LessonView")
      .def(py::init<int, int, int>(), py::arg("volume"), py::arg("lesson"), py::arg("page") = 1)
      .def_readonly("volume", &state::LessonView::volume)
      .def_readonly("lesson", &state::LessonView::lesson)
      .def_readonly("page", &state::LessonView::page)
      .def("__eq__", [](const state::LessonView& a, const state::LessonView& b) { return a == b; })
      .def("__hash__", [](const state::LessonView& s) { return py::hash(py::make_tuple(s.volume, s.lesson, s.page)); })
      .def("__repr__", [](const state::LessonView& s) { return describe(AppState{s}); });
  py::class_<state::QuizView>(st, "QuizView")
      .def(py::init([](int v, int l) { return state::QuizView{v, l, {}}; }), py::arg("volume"), py::arg("lesson"))
      .def_readonly("volume", &state::QuizView::volume)
      .def_readonly("lesson", &state::QuizView::lesson)
      .def("__eq__", [](const state::QuizView& a, const state::QuizView& b) { return a == b; })
      .def("__hash__", [](const state::QuizView& s) { return py::hash(py::make_tuple(s.volume, s.lesson)); })
      .def("__repr__", [](const state::QuizView& s) { return describe(AppState{s}); });

  auto act = m.def_submodule("action");
  bind_marker<action::SelectFile>(act, "SelectFile");
  bind_marker<action::SelectHowTo>(act, "SelectHowTo");
  bind_marker<action::SelectAlphabet>(act, "SelectAlphabet");
  bind_marker<action::SelectAbout>(act, "SelectAbout");
  bind_marker<action::NextPage>(act, "NextPage");
  bind_marker<action::PrevPage>(act, "PrevPage");
  bind_marker<action::Back>(act, "Back");
  bind_marker<action::Exit>(act, "Exit");
  py::class_<action::SelectLesson>(act, "SelectLesson")
      .def(py::init<int, int>(), py::arg("volume"), py::arg("lesson"));
  py::class_<action::SelectTest>(act, "SelectTest")
      .def(py::init<int, int>(), py::arg("volume"), py::arg("lesson"));

  m.def("navigate", &navigate, py::arg("pack"), py::arg("state"), py::arg("action"));
  m.def("is_valid_state", &is_valid_state, py::arg("pack"), py::arg("state"));
  m.def("tap_item",
        [](const ContentPack& pack, const state::LessonView& view, int row, int col) {
          return tap_item(pack, view, row, col).path;
        },
        py::arg("pack"), py::arg("view"), py::arg("row"), py::arg("col"));
  m.def("alphabet_chart", [](const ContentPack& pack) {
    py::list out;
    for (const auto& e : alphabet_chart(pack)) {
      out.append(py::dict(py::arg("key") = e.key, py::arg("text") = e.text, py::arg("translit") = e.translit,
                          py::arg("audio") = e.audio.path));
    }
    return out;
  });

  // Quiz
  py::class_<QuizConfig>(m, "QuizConfig")
      .def(py::init([](int num_questions, int num_options, std::string_view mode, std::uint64_t seed,
                       double mastery_threshold) {
             QuizConfig c{num_questions, num_options, parse_quiz_mode(mode), seed, mastery_threshold};
             check_config(c);
             return c;
           }),
           py::arg("num_questions") = 10, py::arg("num_options") = 4, py::arg("mode") = "audio_to_glyph",
           py::arg("seed") = 0, py::arg("mastery_threshold") = 0.8)
      .def_readonly("num_questions", &QuizConfig::num_questions)
      .def_readonly("num_options", &QuizConfig::num_options)
      .def_readonly("seed", &QuizConfig::seed)
      .def_readonly("mastery_threshold", &QuizConfig::mastery_threshold)
      .def_property_readonly("mode", [](const QuizConfig& c) { return std::string(to_string(c.mode)); });

  py::class_<QuizSession>(m, "QuizSession")
      .def_readonly("session_id", &QuizSession::session_id)
      .def_property_readonly("lesson", [](const QuizSession& s) {
        return std::pair{s.lesson_ref.volume, s.lesson_ref.lesson};
      })
      .def_readonly("config", &QuizSession::config)
      .def_property_readonly("finished", [](const QuizSession& s) { return s.state() == QuizState::kFinished; })
      .def_property_readonly("cursor", &QuizSession::cursor)
      .def("answer_key", [](const QuizSession& s) {
        std::vector<int> key;
        for (const auto& q : s.questions) key.push_back(q.correct_index);
        return key;
      })
      .def("transcript_json", [](const QuizSession& s) { return transcript_json(s); })
      .def("__eq__", [](const QuizSession& a, const QuizSession& b) { return a == b; });

  m.def("start_quiz",
        [](const ContentPack& pack, int volume, int lesson, const QuizConfig& config) {
          return start_quiz(pack, {volume, lesson}, config);
        },
        py::arg("pack"), py::arg("volume"), py::arg("lesson"), py::arg("config") = QuizConfig{});
  m.def("current_question", [](const QuizSession& s) { return question_dict(current_question(s)); });
  m.def("submit_answer",
        [](const QuizSession& s, int chosen_index) {
          auto [feedback, next] = submit_answer(s, chosen_index);
          py::dict fb(py::arg("verdict") = feedback.verdict == Verdict::kCorrect ? "correct" : "wrong",
                      py::arg("message_key") = feedback.message_key,
                      py::arg("message") = std::string(render_message(feedback.message_key)),
                      py::arg("correct_option") = option_dict(feedback.correct_option));
          return py::make_tuple(fb, std::move(next));
        },
        py::arg("session"), py::arg("chosen_index"), "Returns (feedback, next_session).");
  m.def("finish", [](const QuizSession& s) { return result_dict(finish(s)); });

  // Progress
  py::class_<ProgressRecord>(m, "ProgressRecord")
      .def(py::init([](std::string learner, bool lock_mode) { return ProgressRecord{std::move(learner), lock_mode, {}}; }),
           py::arg("learner"), py::arg("lock_mode") = false)
      .def_readwrite("learner", &ProgressRecord::learner)
      .def_readwrite("lock_mode", &ProgressRecord::lock_mode)
      .def_property_readonly("entries", [](const ProgressRecord& r) {
        py::dict out;
        for (const auto& [ref, e] : r.entries) {
          out[py::make_tuple(ref.volume, ref.lesson)] =
              py::dict(py::arg("attempts") = e.attempts, py::arg("best_score") = e.best_score,
                       py::arg("mastered") = e.mastered, py::arg("last_seed") = e.last_seed);
        }
        return out;
      })
      .def("to_json", [](const ProgressRecord& r) { return progress_to_json(r); })
      .def("__eq__", [](const ProgressRecord& a, const ProgressRecord& b) { return a == b; });

  m.def("record_result",
        [](const ProgressRecord& p, int volume, int lesson, int correct_count, int total, bool mastered,
           std::uint64_t seed) { return record_result(p, {volume, lesson}, {correct_count, total, mastered}, seed); },
        py::arg("progress"), py::arg("volume"), py::arg("lesson"), py::arg("correct_count"), py::arg("total"),
        py::arg("mastered"), py::arg("seed") = 0);
  m.def("is_unlocked",
        [](const ProgressRecord& p, const ContentPack& pack, int volume, int lesson) {
          return is_unlocked(p, pack, {volume, lesson});
        },
        py::arg("progress"), py::arg("pack"), py::arg("volume"), py::arg("lesson"));
  m.def("progress_path", &progress_path, py::arg("data_dir"), py::arg("learner"));
  m.def("load_progress", &load_progress, py::arg("path"));
  m.def("save_progress", &save_progress, py::arg("progress"), py::arg("path"));
}
