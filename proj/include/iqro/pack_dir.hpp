#pragma once

#include <filesystem>
#include <set>
#include <string>

#include "iqro/content_model.hpp"
#include "iqro/pack_parser.hpp"

namespace iqro {

inline constexpr const char* kManifestName = "pack.json";

// A pack directory on disk: pack.json plus everything under assets/.
struct PackDir {
  std::filesystem::path root;
  ContentPack pack;
  std::set<std::string> asset_listing;
  ValidationReport report;
};

// Reads a whole file. Throws Error(kIo).
std::string read_file(const std::filesystem::path& path);

// Regular files under <root>/assets, as root-relative forward-slash paths.
// An absent assets directory yields an empty listing.
std::set<std::string> list_assets(const std::filesystem::path& root);

// Parses the manifest and validates it against the on-disk assets. Parse
// failures propagate as Error; validation findings land in the report.
PackDir load_pack_dir(const std::filesystem::path& root,
                      const ParseLimits& limits = {});

}  // namespace iqro
