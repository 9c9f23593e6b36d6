#include "iqro/content_model.hpp"

#include <set>

#include "iqro/error.hpp"

namespace iqro {

std::size_t Page::item_count() const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.size();
  return n;
}

const GlyphItem& lookup_item(const ContentPack& pack, std::string_view id) {
  auto it = pack.items.find(id);
  if (it == pack.items.end()) {
    throw Error(ErrorCode::kUnknownItem,
                "unknown item '" + std::string(id) + "'");
  }
  return it->second;
}

const Lesson& lesson_at(const ContentPack& pack, int volume_index,
                        int lesson_ordinal) {
  const auto nvol = static_cast<int>(pack.volumes.size());
  if (volume_index >= 1 && volume_index <= nvol) {
    const auto& lessons = pack.volumes[volume_index - 1].lessons;
    if (lesson_ordinal >= 1 && lesson_ordinal <= static_cast<int>(lessons.size())) {
      return lessons[lesson_ordinal - 1];
    }
  }
  throw Error(ErrorCode::kUnknownLesson,
              "no lesson " + std::to_string(lesson_ordinal) + " in volume " +
                  std::to_string(volume_index));
}

const Page& page_at(const ContentPack& pack, int volume_index,
                    int lesson_ordinal, int page_number) {
  const Lesson& lesson = lesson_at(pack, volume_index, lesson_ordinal);
  if (page_number < 1 || page_number > static_cast<int>(lesson.pages.size())) {
    throw Error(ErrorCode::kUnknownLesson,
                "no page " + std::to_string(page_number) + " in lesson " +
                    lesson.id);
  }
  return lesson.pages[page_number - 1];
}

std::vector<LessonRef> all_lessons(const ContentPack& pack) {
  std::vector<LessonRef> out;
  for (std::size_t v = 0; v < pack.volumes.size(); ++v) {
    for (std::size_t l = 0; l < pack.volumes[v].lessons.size(); ++l) {
      out.push_back({static_cast<int>(v + 1), static_cast<int>(l + 1)});
    }
  }
  return out;
}

namespace {

void collect_ids(const Lesson& lesson, std::set<std::string>& seen,
                 std::vector<std::string>& out) {
  for (const auto& page : lesson.pages) {
    for (const auto& row : page.rows) {
      for (const auto& id : row) {
        if (seen.insert(id).second) out.push_back(id);
      }
    }
  }
}

}  // namespace

std::vector<std::string> lesson_item_ids(const Lesson& lesson) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  collect_ids(lesson, seen, out);
  return out;
}

std::vector<std::string> volume_item_ids(const Volume& volume) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& lesson : volume.lessons) collect_ids(lesson, seen, out);
  return out;
}

bool is_arabic_text(std::string_view utf8) {
  if (utf8.empty()) return false;
  std::size_t i = 0;
  while (i < utf8.size()) {
    const auto lead = static_cast<unsigned char>(utf8[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (lead < 0x80) {
      cp = lead;
      len = 1;
    } else if ((lead & 0xE0) == 0xC0) {
      cp = lead & 0x1F;
      len = 2;
    } else if ((lead & 0xF0) == 0xE0) {
      cp = lead & 0x0F;
      len = 3;
    } else if ((lead & 0xF8) == 0xF0) {
      cp = lead & 0x07;
      len = 4;
    } else {
      return false;
    }
    if (i + len > utf8.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cont = static_cast<unsigned char>(utf8[i + k]);
      if ((cont & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cont & 0x3F);
    }
    const bool arabic = (cp >= 0x0600 && cp <= 0x06FF) ||
                        (cp >= 0xFB50 && cp <= 0xFDFF) ||
                        (cp >= 0xFE70 && cp <= 0xFEFF);
    if (!arabic) return false;
    i += len;
  }
  return true;
}

std::string asset_path_problem(std::string_view path) {
  if (path.empty()) return "empty path";
  if (path.front() == '/') return "absolute path";
  if (path.find('\\') != std::string_view::npos) return "backslash in path";
  if (path.find('\0') != std::string_view::npos) return "NUL in path";
  if (path.substr(0, 7) != "assets/") return "path outside assets/";
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    const auto segment = path.substr(start, end - start);
    if (segment.empty()) return "empty path segment";
    if (segment == "." || segment == "..") return "relative segment in path";
    start = end + 1;
  }
  return {};
}

}  // namespace iqro
