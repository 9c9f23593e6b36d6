#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "iqro/content_model.hpp"
#include "iqro/pack_dir.hpp"

namespace iqro::testing {

inline std::filesystem::path reference_pack_dir() { return IQRO_REFERENCE_PACK_DIR; }
inline std::filesystem::path golden_dir() { return IQRO_GOLDEN_DIR; }

inline const PackDir& reference_pack() {
  static const PackDir dir = load_pack_dir(reference_pack_dir());
  return dir;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device device;
    path_ = std::filesystem::temp_directory_path() /
            ("iqro-test-" + std::to_string(device()) + std::to_string(device()));
    std::filesystem::create_directories(path_);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Copies a pack directory tree into a new temp dir.
inline void copy_pack(const std::filesystem::path& from, const std::filesystem::path& to) {
  std::filesystem::copy(from, to, std::filesystem::copy_options::recursive);
}

// Random small valid packs for property tests. Strings deliberately include
// quotes, backslashes, control characters and non-ASCII text.
class PackGenerator {
 public:
  explicit PackGenerator(std::uint64_t seed) : rng_(seed) {}

  ContentPack next() {
    ContentPack pack;
    pack.title = free_text();
    pack.about = free_text();
    pack.how_to = free_text();

    const int letters = range(1, 5);
    for (int i = 0; i < letters; ++i) {
      AlphabetLetter letter;
      letter.key = "k" + std::to_string(i) + ident(0, 3);
      letter.text = arabic(1, 2);
      letter.translit = free_text();
      letter.audio = asset();
      pack.alphabet.push_back(std::move(letter));
    }

    const int items = range(1, 12);
    for (int i = 0; i < items; ++i) {
      GlyphItem item;
      item.id = ident(1, 6) + "_" + std::to_string(i);
      item.text = arabic(1, 4);
      item.translit = free_text();
      item.base_letter = pack.alphabet[range(0, letters - 1)].key;
      item.audio = asset();
      if (range(0, 3) == 0) item.image = AssetRef{"assets/img/" + ident(1, 5) + ".png"};
      pack.items.emplace(item.id, item);
    }
    std::vector<std::string> ids;
    for (const auto& [id, _] : pack.items) ids.push_back(id);

    const int volumes = range(1, 3);
    int lesson_counter = 0;
    for (int v = 1; v <= volumes; ++v) {
      Volume volume{v, free_text(), {}};
      const int lessons = range(1, 3);
      for (int l = 0; l < lessons; ++l) {
        Lesson lesson{"lesson" + std::to_string(lesson_counter++) + free_text_ascii(), free_text(), {}};
        const int pages = range(1, 3);
        for (int p = 0; p < pages; ++p) {
          Page page;
          const int rows = range(0, 3);
          for (int r = 0; r < rows; ++r) {
            std::vector<std::string> row;
            const int cols = range(0, 4);
            for (int c = 0; c < cols; ++c) row.push_back(ids[range(0, items - 1)]);
            page.rows.push_back(std::move(row));
          }
          lesson.pages.push_back(std::move(page));
        }
        volume.lessons.push_back(std::move(lesson));
      }
      pack.volumes.push_back(std::move(volume));
    }
    return pack;
  }

  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::string ident(int min_len, int max_len) {
    static constexpr char kChars[] = "abcdefghijklmnopqrstuvwxyz0123456789_";
    std::string s;
    const int n = range(min_len, max_len);
    for (int i = 0; i < n; ++i) s.push_back(kChars[range(0, 36)]);
    return s;
  }

  std::string arabic(int min_len, int max_len) {
    static const std::vector<std::string> kGlyphs = {
        "ا", "ب", "ت", "ث", "ج", "ح", "خ", "د", "ع", "ي", "َ", "ِ", "ُ", "ً", "ﻻ", "ﷲ", "ـ"};
    std::string s;
    const int n = range(min_len, max_len);
    for (int i = 0; i < n; ++i) s += kGlyphs[range(0, static_cast<int>(kGlyphs.size()) - 1)];
    return s;
  }

  std::string free_text() {
    static const std::vector<std::string> kPieces = {
        "a", "Iqro'", " ", "\"", "\\", "/", "\n", "\t", "\x01", "é", "ḥa", "بَ", "😀", "{}", "[]", "0"};
    std::string s;
    const int n = range(0, 6);
    for (int i = 0; i < n; ++i) s += kPieces[range(0, static_cast<int>(kPieces.size()) - 1)];
    return s;
  }

  std::string free_text_ascii() { return range(0, 1) ? "" : "-x"; }

  AssetRef asset() {
    return AssetRef{"assets/audio/" + ident(1, 4) + "/" + ident(1, 6) + (range(0, 1) ? ".wav" : ".ogg")};
  }

  std::mt19937_64 rng_;
};

}  // namespace iqro::testing
