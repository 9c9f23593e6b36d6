#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iqro/content_model.hpp"

namespace iqro {

struct ParseLimits {
  std::size_t max_manifest_bytes = 8u * 1024u * 1024u;
  std::size_t max_items = 10'000;
};

// Parses a pack.json manifest. Throws Error with one of kSyntax, kSchema,
// kDuplicateId, kDanglingRef, kBadVersion. The returned pack satisfies every
// structural and referential invariant of the content model; asset presence
// is checked separately by validate_assets.
ContentPack parse_pack(std::string_view manifest_bytes,
                       const ParseLimits& limits = {});

// Canonical form: keys in manifest schema order, items sorted by id, two
// space indentation, UTF-8 without escaping, LF line endings, trailing
// newline.
std::string serialize_pack(const ContentPack& pack);

struct ValidationIssue {
  std::string code;
  std::string path;
  std::string message;

  bool operator==(const ValidationIssue&) const = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool loadable() const { return errors.empty(); }
  bool operator==(const ValidationReport&) const = default;
};

// Issue codes.
inline constexpr std::string_view kMissingAudio = "MISSING_AUDIO";
inline constexpr std::string_view kEmptyLesson = "EMPTY_LESSON";
inline constexpr std::string_view kEmptyPage = "EMPTY_PAGE";
inline constexpr std::string_view kOrphanAsset = "ORPHAN_ASSET";
inline constexpr std::string_view kOrphanItem = "ORPHAN_ITEM";

// Pure: the asset listing (paths relative to the pack root, e.g.
// "assets/audio/alif.wav") is an explicit input.
ValidationReport validate_assets(const ContentPack& pack,
                                 const std::set<std::string>& asset_listing);

std::string report_to_json(const ValidationReport& report, int indent = 2);
ValidationReport report_from_json(std::string_view json_text);

}  // namespace iqro
