#include "iqro/scaffold.hpp"

#include <cstdint>

#include "iqro/atomic_file.hpp"
#include "iqro/error.hpp"
#include "iqro/pack_dir.hpp"
#include "iqro/pack_parser.hpp"

namespace fs = std::filesystem;

namespace iqro {

ContentPack minimal_pack() {
  ContentPack pack;
  pack.title = "New pack";
  pack.about = "A new hijaiyah content pack.";
  pack.how_to = "Tap a letter to hear how it is pronounced.";
  pack.alphabet.push_back({"alif", "ا", "alif", {"assets/audio/alif.wav"}});
  pack.items.emplace("alif", GlyphItem{"alif", "أَ", "a", "alif",
                                       {"assets/audio/alif.wav"}, std::nullopt});
  Lesson lesson{"iqro1_materi1", "Materi 1", {Page{{{"alif"}}}}};
  pack.volumes.push_back(Volume{1, "Iqro' 1", {lesson}});
  return pack;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace

std::string silent_wav(int milliseconds) {
  constexpr std::uint32_t kRate = 8000;
  const std::uint32_t samples = kRate * static_cast<std::uint32_t>(milliseconds) / 1000;
  std::string out;
  out += "RIFF";
  put_u32(out, 36 + samples);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, 1);      // PCM
  put_u16(out, 1);      // mono
  put_u32(out, kRate);  // sample rate
  put_u32(out, kRate);  // byte rate
  put_u16(out, 1);      // block align
  put_u16(out, 8);      // bits per sample
  out += "data";
  put_u32(out, samples);
  out.append(samples, static_cast<char>(0x80));  // 8-bit PCM silence
  return out;
}

void scaffold_pack(const fs::path& dir) {
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_empty(dir, ec)) {
    throw Error(ErrorCode::kIo, dir.string() + " exists and is not empty");
  }
  const ContentPack pack = minimal_pack();
  write_file_atomic(dir / kManifestName, serialize_pack(pack));
  const std::string wav = silent_wav();
  for (const auto& letter : pack.alphabet) write_file_atomic(dir / letter.audio.path, wav);
  for (const auto& [id, item] : pack.items) write_file_atomic(dir / item.audio.path, wav);
}

}  // namespace iqro
