#include "iqro/pack_parser.hpp"

#include <algorithm>
#include <json.hpp>
#include <limits>
#include <optional>
#include <set>
#include <regex>

#include "iqro/error.hpp"

namespace iqro {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(ErrorCode code, const std::string& path,
                       const std::string& message) {
  throw Error(code, path.empty() ? message : path + ": " + message);
}

[[noreturn]] void schema(const std::string& path, const std::string& message) {
  fail(ErrorCode::kSchema, path, message);
}

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> allowed = {}) {
  for (auto key : required) {
    if (!obj.contains(key)) schema(path, "missing field '" + std::string(key) + "'");
  }
  for (const auto& [key, _] : obj.items()) {
    const auto known = [&](std::string_view k) { return k == key; };
    if (std::none_of(required.begin(), required.end(), known) &&
        std::none_of(allowed.begin(), allowed.end(), known)) {
      schema(path, "unknown field '" + key + "'");
    }
  }
}

const json& object_at(const json& parent, std::string_view key,
                      const std::string& path) {
  const json& v = parent.at(std::string(key));
  if (!v.is_object()) schema(path + "." + std::string(key), "expected object");
  return v;
}

const json& array_at(const json& parent, std::string_view key,
                     const std::string& path) {
  const json& v = parent.at(std::string(key));
  if (!v.is_array()) schema(path + "." + std::string(key), "expected array");
  return v;
}

std::string string_at(const json& parent, std::string_view key,
                      const std::string& path) {
  const json& v = parent.at(std::string(key));
  if (!v.is_string()) schema(path + "." + std::string(key), "expected string");
  return v.get<std::string>();
}

std::string nonempty_string_at(const json& parent, std::string_view key,
                               const std::string& path) {
  auto s = string_at(parent, key, path);
  if (s.empty()) schema(path + "." + std::string(key), "must not be empty");
  return s;
}

int int_at(const json& parent, std::string_view key, const std::string& path) {
  const json& v = parent.at(std::string(key));
  if (!v.is_number_integer()) schema(path + "." + std::string(key), "expected integer");
  const auto wide = v.get<std::int64_t>();
  if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
    schema(path + "." + std::string(key), "integer out of range");
  }
  return static_cast<int>(wide);
}

std::string arabic_text_at(const json& parent, std::string_view key,
                           const std::string& path) {
  auto s = nonempty_string_at(parent, key, path);
  if (!is_arabic_text(s)) {
    schema(path + "." + std::string(key), "text must be Arabic-script code points only");
  }
  return s;
}

AssetRef asset_at(const json& parent, std::string_view key,
                  const std::string& path) {
  auto s = string_at(parent, key, path);
  if (auto problem = asset_path_problem(s); !problem.empty()) {
    schema(path + "." + std::string(key), "bad asset path '" + s + "': " + problem);
  }
  return AssetRef{std::move(s)};
}

bool valid_item_id(const std::string& id) {
  static const std::regex pattern("[a-z0-9_]+");
  return std::regex_match(id, pattern);
}

// Tracks object keys during parsing so duplicate keys are reported instead
// of silently overwritten.
struct DuplicateKeyTracker {
  struct Frame {
    std::string name;
    bool is_object = false;
    std::set<std::string> keys;
    std::string last_key;
  };
  std::vector<Frame> stack;
  std::optional<std::pair<std::string, std::string>> first_duplicate;  // (container, key)

  bool operator()(int /*depth*/, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
      case json::parse_event_t::array_start: {
        Frame frame;
        frame.is_object = event == json::parse_event_t::object_start;
        if (!stack.empty()) {
          frame.name = stack.back().is_object ? stack.back().last_key : "[]";
        }
        stack.push_back(std::move(frame));
        break;
      }
      case json::parse_event_t::object_end:
      case json::parse_event_t::array_end:
        if (!stack.empty()) stack.pop_back();
        break;
      case json::parse_event_t::key: {
        auto& top = stack.back();
        top.last_key = parsed.get<std::string>();
        if (!top.keys.insert(top.last_key).second && !first_duplicate) {
          const bool items_table = stack.size() == 2 && top.name == "items";
          first_duplicate.emplace(items_table ? "items" : top.name, top.last_key);
        }
        break;
      }
      case json::parse_event_t::value:
        break;
    }
    return true;
  }
};

}  // namespace

ContentPack parse_pack(std::string_view manifest_bytes, const ParseLimits& limits) {
  if (manifest_bytes.size() > limits.max_manifest_bytes) {
    fail(ErrorCode::kSchema, "", "manifest exceeds " +
                                     std::to_string(limits.max_manifest_bytes) + " bytes");
  }

  DuplicateKeyTracker tracker;
  json root;
  try {
    root = json::parse(manifest_bytes.begin(), manifest_bytes.end(),
                       [&tracker](int d, json::parse_event_t e, json& p) {
                         return tracker(d, e, p);
                       });
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kSyntax, "", e.what());
  }
  if (tracker.first_duplicate) {
    const auto& [container, key] = *tracker.first_duplicate;
    if (container == "items") {
      fail(ErrorCode::kDuplicateId, "items", "duplicate item id '" + key + "'");
    }
    fail(ErrorCode::kSchema, container, "duplicate field '" + key + "'");
  }

  if (!root.is_object()) schema("", "manifest must be a JSON object");
  if (!root.contains("format_version")) schema("", "missing field 'format_version'");
  if (!root["format_version"].is_number_integer()) {
    schema("format_version", "expected integer");
  }
  if (root["format_version"].get<std::int64_t>() != kFormatVersion) {
    fail(ErrorCode::kBadVersion, "format_version",
         "unsupported format_version " + root["format_version"].dump());
  }
  require_keys(root, "",
               {"format_version", "title", "about", "how_to", "alphabet", "items", "volumes"});

  ContentPack pack;
  pack.format_version = kFormatVersion;
  pack.title = string_at(root, "title", "");
  pack.about = string_at(root, "about", "");
  pack.how_to = string_at(root, "how_to", "");

  std::set<std::string> letter_keys;
  const json& alphabet = array_at(root, "alphabet", "");
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    const std::string path = "alphabet[" + std::to_string(i) + "]";
    const json& entry = alphabet[i];
    if (!entry.is_object()) schema(path, "expected object");
    require_keys(entry, path, {"key", "text", "translit", "audio"});
    AlphabetLetter letter;
    letter.key = nonempty_string_at(entry, "key", path);
    letter.text = arabic_text_at(entry, "text", path);
    letter.translit = string_at(entry, "translit", path);
    letter.audio = asset_at(entry, "audio", path);
    if (!letter_keys.insert(letter.key).second) {
      fail(ErrorCode::kDuplicateId, path, "duplicate alphabet key '" + letter.key + "'");
    }
    pack.alphabet.push_back(std::move(letter));
  }

  const json& items = object_at(root, "items", "");
  if (items.size() > limits.max_items) {
    schema("items", "more than " + std::to_string(limits.max_items) + " items");
  }
  for (const auto& [id, body] : items.items()) {
    const std::string path = "items." + id;
    if (!valid_item_id(id)) schema(path, "item id must match [a-z0-9_]+");
    if (!body.is_object()) schema(path, "expected object");
    require_keys(body, path, {"text", "translit", "base_letter", "audio"}, {"image"});
    GlyphItem item;
    item.id = id;
    item.text = arabic_text_at(body, "text", path);
    item.translit = string_at(body, "translit", path);
    item.base_letter = nonempty_string_at(body, "base_letter", path);
    item.audio = asset_at(body, "audio", path);
    if (body.contains("image")) item.image = asset_at(body, "image", path);
    if (!letter_keys.contains(item.base_letter)) {
      fail(ErrorCode::kDanglingRef, path + ".base_letter",
           "unknown base letter '" + item.base_letter + "'");
    }
    pack.items.emplace(id, std::move(item));
  }

  std::set<std::string> lesson_ids;
  const json& volumes = array_at(root, "volumes", "");
  for (std::size_t v = 0; v < volumes.size(); ++v) {
    const std::string vpath = "volumes[" + std::to_string(v) + "]";
    const json& vj = volumes[v];
    if (!vj.is_object()) schema(vpath, "expected object");
    require_keys(vj, vpath, {"index", "title", "lessons"});
    Volume volume;
    volume.index = int_at(vj, "index", vpath);
    if (volume.index != static_cast<int>(v) + 1) {
      schema(vpath + ".index", "volume indices must be consecutive from 1, expected " +
                                   std::to_string(v + 1));
    }
    volume.title = string_at(vj, "title", vpath);
    const json& lessons = array_at(vj, "lessons", vpath);
    if (lessons.empty()) schema(vpath + ".lessons", "volume needs at least one lesson");
    for (std::size_t l = 0; l < lessons.size(); ++l) {
      const std::string lpath = vpath + ".lessons[" + std::to_string(l) + "]";
      const json& lj = lessons[l];
      if (!lj.is_object()) schema(lpath, "expected object");
      require_keys(lj, lpath, {"id", "title", "pages"});
      Lesson lesson;
      lesson.id = nonempty_string_at(lj, "id", lpath);
      if (!lesson_ids.insert(lesson.id).second) {
        fail(ErrorCode::kDuplicateId, lpath + ".id", "duplicate lesson id '" + lesson.id + "'");
      }
      lesson.title = string_at(lj, "title", lpath);
      const json& pages = array_at(lj, "pages", lpath);
      if (pages.empty()) schema(lpath + ".pages", "lesson needs at least one page");
      for (std::size_t p = 0; p < pages.size(); ++p) {
        const std::string ppath = lpath + ".pages[" + std::to_string(p) + "]";
        const json& pj = pages[p];
        if (!pj.is_object()) schema(ppath, "expected object");
        require_keys(pj, ppath, {"rows"});
        Page page;
        const json& rows = array_at(pj, "rows", ppath);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          const std::string rpath = ppath + ".rows[" + std::to_string(r) + "]";
          if (!rows[r].is_array()) schema(rpath, "expected array");
          std::vector<std::string> row;
          for (std::size_t c = 0; c < rows[r].size(); ++c) {
            const std::string cpath = rpath + "[" + std::to_string(c) + "]";
            if (!rows[r][c].is_string()) schema(cpath, "expected item id string");
            auto id = rows[r][c].get<std::string>();
            if (!pack.items.contains(id)) {
              fail(ErrorCode::kDanglingRef, cpath, "unknown item '" + id + "'");
            }
            row.push_back(std::move(id));
          }
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

std::string serialize_pack(const ContentPack& pack) {
  ordered_json root;
  root["format_version"] = pack.format_version;
  root["title"] = pack.title;
  root["about"] = pack.about;
  root["how_to"] = pack.how_to;

  auto alphabet = ordered_json::array();
  for (const auto& letter : pack.alphabet) {
    ordered_json e;
    e["key"] = letter.key;
    e["text"] = letter.text;
    e["translit"] = letter.translit;
    e["audio"] = letter.audio.path;
    alphabet.push_back(std::move(e));
  }
  root["alphabet"] = std::move(alphabet);

  auto items = ordered_json::object();
  for (const auto& [id, item] : pack.items) {
    ordered_json e;
    e["text"] = item.text;
    e["translit"] = item.translit;
    e["base_letter"] = item.base_letter;
    e["audio"] = item.audio.path;
    if (item.image) e["image"] = item.image->path;
    items[id] = std::move(e);
  }
  root["items"] = std::move(items);

  auto volumes = ordered_json::array();
  for (const auto& volume : pack.volumes) {
    ordered_json v;
    v["index"] = volume.index;
    v["title"] = volume.title;
    auto lessons = ordered_json::array();
    for (const auto& lesson : volume.lessons) {
      ordered_json l;
      l["id"] = lesson.id;
      l["title"] = lesson.title;
      auto pages = ordered_json::array();
      for (const auto& page : lesson.pages) {
        ordered_json p;
        p["rows"] = page.rows;
        pages.push_back(std::move(p));
      }
      l["pages"] = std::move(pages);
      lessons.push_back(std::move(l));
    }
    v["lessons"] = std::move(lessons);
    volumes.push_back(std::move(v));
  }
  root["volumes"] = std::move(volumes);

  return root.dump(2) + "\n";
}

ValidationReport validate_assets(const ContentPack& pack,
                                 const std::set<std::string>& asset_listing) {
  ValidationReport report;
  std::set<std::string> referenced;

  auto check_audio = [&](const AssetRef& ref, const std::string& path,
                         const std::string& what) {
    referenced.insert(ref.path);
    if (!asset_listing.contains(ref.path)) {
      report.errors.push_back({std::string(kMissingAudio), path,
                               what + " audio '" + ref.path + "' is missing"});
    }
  };

  for (std::size_t i = 0; i < pack.alphabet.size(); ++i) {
    const auto& letter = pack.alphabet[i];
    check_audio(letter.audio, "alphabet[" + std::to_string(i) + "]",
                "letter '" + letter.key + "'");
  }
  for (const auto& [id, item] : pack.items) {
    check_audio(item.audio, "items." + id, "item '" + id + "'");
    if (item.image) referenced.insert(item.image->path);
  }

  std::set<std::string> on_page;
  for (std::size_t v = 0; v < pack.volumes.size(); ++v) {
    const auto& lessons = pack.volumes[v].lessons;
    for (std::size_t l = 0; l < lessons.size(); ++l) {
      const std::string lpath =
          "volumes[" + std::to_string(v) + "].lessons[" + std::to_string(l) + "]";
      std::size_t lesson_items = 0;
      for (const auto& page : lessons[l].pages) lesson_items += page.item_count();
      if (lesson_items == 0) {
        report.errors.push_back({std::string(kEmptyLesson), lpath,
                                 "lesson '" + lessons[l].id + "' has no items"});
        continue;
      }
      for (std::size_t p = 0; p < lessons[l].pages.size(); ++p) {
        const auto& page = lessons[l].pages[p];
        if (page.item_count() == 0) {
          report.errors.push_back({std::string(kEmptyPage),
                                   lpath + ".pages[" + std::to_string(p) + "]",
                                   "page has no items"});
        }
        for (const auto& row : page.rows) on_page.insert(row.begin(), row.end());
      }
    }
  }

  for (const auto& [id, item] : pack.items) {
    if (!on_page.contains(id)) {
      report.warnings.push_back({std::string(kOrphanItem), "items." + id,
                                 "item '" + id + "' is not on any page"});
    }
  }
  for (const auto& listed : asset_listing) {
    if (!referenced.contains(listed)) {
      report.warnings.push_back({std::string(kOrphanAsset), listed,
                                 "asset '" + listed + "' is referenced by nothing"});
    }
  }
  return report;
}

namespace {

ordered_json issues_to_json(const std::vector<ValidationIssue>& issues) {
  auto out = ordered_json::array();
  for (const auto& issue : issues) {
    ordered_json e;
    e["code"] = issue.code;
    e["path"] = issue.path;
    e["message"] = issue.message;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ValidationIssue> issues_from_json(const json& arr) {
  std::vector<ValidationIssue> out;
  for (const auto& e : arr) {
    out.push_back({e.at("code").get<std::string>(), e.at("path").get<std::string>(),
                   e.at("message").get<std::string>()});
  }
  return out;
}

}  // namespace

std::string report_to_json(const ValidationReport& report, int indent) {
  ordered_json root;
  root["loadable"] = report.loadable();
  root["errors"] = issues_to_json(report.errors);
  root["warnings"] = issues_to_json(report.warnings);
  return root.dump(indent);
}

ValidationReport report_from_json(std::string_view json_text) {
  try {
    const json root = json::parse(json_text);
    return {issues_from_json(root.at("errors")), issues_from_json(root.at("warnings"))};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSyntax, std::string("not a validation report: ") + e.what());
  }
}

}  // namespace iqro
