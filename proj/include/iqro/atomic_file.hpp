#pragma once

#include <filesystem>
#include <string_view>

namespace iqro {

// Writes data to a temporary file next to path, flushes it to disk, then
// renames it over path. Readers see either the old content or the new
// content, never a partial file. Creates missing parent directories.
// Throws Error(kIo).
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

}  // namespace iqro
