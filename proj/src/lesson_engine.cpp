#include "iqro/lesson_engine.hpp"

#include <algorithm>

#include "iqro/error.hpp"

namespace iqro {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad_transition(const AppState& state, const MenuAction& action) {
  throw Error(ErrorCode::kBadTransition,
              describe(action) + " is not defined in state " + describe(state));
}

int page_count(const ContentPack& pack, int volume, int lesson) {
  return static_cast<int>(lesson_at(pack, volume, lesson).pages.size());
}

AppState from_home(const ContentPack& pack, const AppState& state,
                   const MenuAction& action) {
  return std::visit(
      overloaded{
          [](const action::SelectFile&) -> AppState { return state::FileInfo{}; },
          [](const action::SelectHowTo&) -> AppState { return state::HowTo{}; },
          [](const action::SelectAlphabet&) -> AppState { return state::AlphabetChart{}; },
          [&](const action::SelectLesson& a) -> AppState {
            lesson_at(pack, a.volume, a.lesson);
            return state::LessonView{a.volume, a.lesson, 1};
          },
          [&](const action::SelectTest& a) -> AppState {
            lesson_at(pack, a.volume, a.lesson);
            return state::QuizView{a.volume, a.lesson, {}};
          },
          [](const action::SelectAbout&) -> AppState { return state::About{}; },
          [](const action::Exit&) -> AppState { return state::Exited{}; },
          [&](const auto&) -> AppState { bad_transition(state, action); },
      },
      action);
}

}  // namespace

std::string describe(const AppState& state) {
  return std::visit(
      overloaded{
          [](const state::Home&) -> std::string { return "Home"; },
          [](const state::FileInfo&) -> std::string { return "FileInfo"; },
          [](const state::HowTo&) -> std::string { return "HowTo"; },
          [](const state::AlphabetChart&) -> std::string { return "AlphabetChart"; },
          [](const state::LessonView& s) -> std::string {
            return "LessonView{" + std::to_string(s.volume) + "," +
                   std::to_string(s.lesson) + "," + std::to_string(s.page) + "}";
          },
          [](const state::QuizView& s) -> std::string {
            return "QuizView{" + std::to_string(s.volume) + "," +
                   std::to_string(s.lesson) + "," + s.session_id + "}";
          },
          [](const state::About&) -> std::string { return "About"; },
          [](const state::Exited&) -> std::string { return "Exited"; },
      },
      state);
}

std::string describe(const MenuAction& action) {
  return std::visit(
      overloaded{
          [](const action::SelectFile&) -> std::string { return "SelectFile"; },
          [](const action::SelectHowTo&) -> std::string { return "SelectHowTo"; },
          [](const action::SelectAlphabet&) -> std::string { return "SelectAlphabet"; },
          [](const action::SelectLesson& a) -> std::string {
            return "SelectLesson{" + std::to_string(a.volume) + "," +
                   std::to_string(a.lesson) + "}";
          },
          [](const action::SelectTest& a) -> std::string {
            return "SelectTest{" + std::to_string(a.volume) + "," +
                   std::to_string(a.lesson) + "}";
          },
          [](const action::SelectAbout&) -> std::string { return "SelectAbout"; },
          [](const action::NextPage&) -> std::string { return "NextPage"; },
          [](const action::PrevPage&) -> std::string { return "PrevPage"; },
          [](const action::Back&) -> std::string { return "Back"; },
          [](const action::Exit&) -> std::string { return "Exit"; },
      },
      action);
}

AppState navigate(const ContentPack& pack, const AppState& state,
                  const MenuAction& action) {
  if (std::holds_alternative<state::Exited>(state)) bad_transition(state, action);
  if (std::holds_alternative<state::Home>(state)) return from_home(pack, state, action);

  if (std::holds_alternative<action::Back>(action)) return state::Home{};
  if (std::holds_alternative<action::Exit>(action) &&
      std::holds_alternative<state::FileInfo>(state)) {
    return state::Exited{};
  }

  if (const auto* view = std::get_if<state::LessonView>(&state)) {
    const int last = page_count(pack, view->volume, view->lesson);
    if (view->page < 1 || view->page > last) {
      throw Error(ErrorCode::kUnknownLesson, "page out of range in " + describe(state));
    }
    if (std::holds_alternative<action::NextPage>(action)) {
      return state::LessonView{view->volume, view->lesson, std::min(view->page + 1, last)};
    }
    if (std::holds_alternative<action::PrevPage>(action)) {
      return state::LessonView{view->volume, view->lesson, std::max(view->page - 1, 1)};
    }
  }
  bad_transition(state, action);
}

bool is_valid_state(const ContentPack& pack, const AppState& state) {
  try {
    if (const auto* view = std::get_if<state::LessonView>(&state)) {
      page_at(pack, view->volume, view->lesson, view->page);
    } else if (const auto* quiz = std::get_if<state::QuizView>(&state)) {
      lesson_at(pack, quiz->volume, quiz->lesson);
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

const AssetRef& tap_item(const ContentPack& pack, const state::LessonView& view,
                         int row, int col) {
  const Page& page = page_at(pack, view.volume, view.lesson, view.page);
  if (row < 1 || row > static_cast<int>(page.rows.size())) {
    throw Error(ErrorCode::kIndex, "row " + std::to_string(row) + " outside page");
  }
  const auto& cells = page.rows[row - 1];
  if (col < 1 || col > static_cast<int>(cells.size())) {
    throw Error(ErrorCode::kIndex, "column " + std::to_string(col) + " outside row " +
                                       std::to_string(row));
  }
  return lookup_item(pack, cells[col - 1]).audio;
}

std::vector<AlphabetEntry> alphabet_chart(const ContentPack& pack) {
  std::vector<AlphabetEntry> out;
  out.reserve(pack.alphabet.size());
  for (const auto& letter : pack.alphabet) {
    out.push_back({letter.key, letter.text, letter.translit, letter.audio});
  }
  return out;
}

const std::string& help_text(const ContentPack& pack) { return pack.how_to; }

}  // namespace iqro
