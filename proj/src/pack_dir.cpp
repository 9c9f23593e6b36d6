#include "iqro/pack_dir.hpp"

#include <fstream>
#include <sstream>

#include "iqro/error.hpp"

namespace fs = std::filesystem;

namespace iqro {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return std::move(buffer).str();
}

std::set<std::string> list_assets(const fs::path& root) {
  std::set<std::string> out;
  const fs::path assets = root / "assets";
  std::error_code ec;
  if (!fs::is_directory(assets, ec)) return out;
  for (auto it = fs::recursive_directory_iterator(assets, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_regular_file(ec)) {
      out.insert(fs::relative(it->path(), root).generic_string());
    }
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + assets.string() + ": " + ec.message());
  return out;
}

PackDir load_pack_dir(const fs::path& root, const ParseLimits& limits) {
  PackDir dir;
  dir.root = root;
  const fs::path manifest = root / kManifestName;
  std::error_code ec;
  const auto size = fs::file_size(manifest, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot stat " + manifest.string() + ": " + ec.message());
  if (size > limits.max_manifest_bytes) {
    throw Error(ErrorCode::kSchema, "manifest exceeds " +
                                        std::to_string(limits.max_manifest_bytes) + " bytes");
  }
  dir.pack = parse_pack(read_file(manifest), limits);
  dir.asset_listing = list_assets(root);
  dir.report = validate_assets(dir.pack, dir.asset_listing);
  return dir;
}

}  // namespace iqro
