#pragma once

#include <filesystem>
#include <string>

#include "iqro/content_model.hpp"

namespace iqro {

// One volume, one lesson, one page holding the single item "alif".
ContentPack minimal_pack();

// A valid PCM WAV file (8 kHz, 8-bit, mono) of silence.
std::string silent_wav(int milliseconds = 100);

// Writes minimal_pack() in canonical form plus its placeholder audio into
// dir. Throws Error(kIo) if dir exists and is not empty.
void scaffold_pack(const std::filesystem::path& dir);

}  // namespace iqro
