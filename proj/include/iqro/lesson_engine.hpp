#pragma once

#include <string>
#include <variant>
#include <vector>

#include "iqro/content_model.hpp"

namespace iqro {

namespace state {
struct Home { bool operator==(const Home&) const = default; };
struct FileInfo { bool operator==(const FileInfo&) const = default; };
struct HowTo { bool operator==(const HowTo&) const = default; };
struct AlphabetChart { bool operator==(const AlphabetChart&) const = default; };
struct LessonView {
  int volume = 1;
  int lesson = 1;
  int page = 1;
  bool operator==(const LessonView&) const = default;
};
// navigate() leaves session_id empty; whoever starts the quiz binds it.
struct QuizView {
  int volume = 1;
  int lesson = 1;
  std::string session_id;
  bool operator==(const QuizView&) const = default;
};
struct About { bool operator==(const About&) const = default; };
struct Exited { bool operator==(const Exited&) const = default; };
}  // namespace state

using AppState = std::variant<state::Home, state::FileInfo, state::HowTo,
                              state::AlphabetChart, state::LessonView,
                              state::QuizView, state::About, state::Exited>;

namespace action {
struct SelectFile { bool operator==(const SelectFile&) const = default; };
struct SelectHowTo { bool operator==(const SelectHowTo&) const = default; };
struct SelectAlphabet { bool operator==(const SelectAlphabet&) const = default; };
struct SelectLesson {
  int volume = 1;
  int lesson = 1;
  bool operator==(const SelectLesson&) const = default;
};
struct SelectTest {
  int volume = 1;
  int lesson = 1;
  bool operator==(const SelectTest&) const = default;
};
struct SelectAbout { bool operator==(const SelectAbout&) const = default; };
struct NextPage { bool operator==(const NextPage&) const = default; };
struct PrevPage { bool operator==(const PrevPage&) const = default; };
struct Back { bool operator==(const Back&) const = default; };
struct Exit { bool operator==(const Exit&) const = default; };
}  // namespace action

using MenuAction =
    std::variant<action::SelectFile, action::SelectHowTo, action::SelectAlphabet,
                 action::SelectLesson, action::SelectTest, action::SelectAbout,
                 action::NextPage, action::PrevPage, action::Back, action::Exit>;

std::string describe(const AppState& state);
std::string describe(const MenuAction& action);

// Transition table. Home is the hub: the Select* actions are only defined
// there; Back returns to Home from every other live state; Exit is defined
// in Home and in FileInfo (the file menu carries the exit entry);
// NextPage/PrevPage move within a lesson, clamped to its first and last
// page. Anything else throws Error(kBadTransition). Invalid lesson
// coordinates throw Error(kUnknownLesson).
AppState navigate(const ContentPack& pack, const AppState& state,
                  const MenuAction& action);

// True iff the state satisfies the AppState invariants for this pack.
bool is_valid_state(const ContentPack& pack, const AppState& state);

// Audio bound to the glyph at 1-based (row, col) of the current page.
// Throws Error(kIndex) outside the page grid.
const AssetRef& tap_item(const ContentPack& pack, const state::LessonView& view,
                         int row, int col);

struct AlphabetEntry {
  std::string key;
  std::string text;
  std::string translit;
  AssetRef audio;

  bool operator==(const AlphabetEntry&) const = default;
};

std::vector<AlphabetEntry> alphabet_chart(const ContentPack& pack);

const std::string& help_text(const ContentPack& pack);

}  // namespace iqro
