#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iqro {

// Path of an asset relative to the pack root, e.g. "assets/audio/ba_fatha.wav".
// Always forward slashes, never absolute, never containing "..", and always
// under the "assets/" directory.
struct AssetRef {
  std::string path;

  bool operator==(const AssetRef&) const = default;
};

struct GlyphItem {
  std::string id;
  std::string text;
  std::string translit;
  std::string base_letter;
  AssetRef audio;
  // Optional raster rendering of the glyph; carried through, never used by
  // the engine.
  std::optional<AssetRef> image;

  bool operator==(const GlyphItem&) const = default;
};

struct AlphabetLetter {
  std::string key;
  std::string text;
  std::string translit;
  AssetRef audio;

  bool operator==(const AlphabetLetter&) const = default;
};

// Rows of item ids, top to bottom. Visual right-to-left ordering inside a
// row is left to the renderer.
struct Page {
  std::vector<std::vector<std::string>> rows;

  std::size_t item_count() const;
  bool operator==(const Page&) const = default;
};

struct Lesson {
  std::string id;
  std::string title;
  std::vector<Page> pages;

  bool operator==(const Lesson&) const = default;
};

struct Volume {
  int index = 0;
  std::string title;
  std::vector<Lesson> lessons;

  bool operator==(const Volume&) const = default;
};

struct LessonRef {
  int volume = 0;
  int lesson = 0;

  auto operator<=>(const LessonRef&) const = default;
};

inline constexpr int kFormatVersion = 1;

// Immutable once parsed. Items are keyed by id; std::map keeps them in
// lexicographic order, which is also the canonical serialization order.
struct ContentPack {
  int format_version = kFormatVersion;
  std::string title;
  std::string about;
  std::string how_to;
  std::vector<AlphabetLetter> alphabet;
  std::map<std::string, GlyphItem, std::less<>> items;
  std::vector<Volume> volumes;

  bool operator==(const ContentPack&) const = default;
};

// Throws Error(kUnknownItem).
const GlyphItem& lookup_item(const ContentPack& pack, std::string_view id);

// 1-based coordinates. Throws Error(kUnknownLesson).
const Lesson& lesson_at(const ContentPack& pack, int volume_index,
                        int lesson_ordinal);
inline const Lesson& lesson_at(const ContentPack& pack, LessonRef ref) {
  return lesson_at(pack, ref.volume, ref.lesson);
}

// 1-based page within a lesson. Throws Error(kUnknownLesson).
const Page& page_at(const ContentPack& pack, int volume_index,
                    int lesson_ordinal, int page_number);

// Every addressable lesson in learning order: volume by volume, lesson by
// lesson.
std::vector<LessonRef> all_lessons(const ContentPack& pack);

// Distinct item ids in first-appearance order (page, row, column).
std::vector<std::string> lesson_item_ids(const Lesson& lesson);
std::vector<std::string> volume_item_ids(const Volume& volume);

// True iff every code point of the UTF-8 string lies in the Arabic blocks
// U+0600-U+06FF, U+FB50-U+FDFF or U+FE70-U+FEFF. False for invalid UTF-8
// and for the empty string.
bool is_arabic_text(std::string_view utf8);

// Checks the AssetRef path rules. Returns an empty string when valid,
// otherwise a short reason.
std::string asset_path_problem(std::string_view path);

}  // namespace iqro
