#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wdf/errors.hpp"

namespace wdf::io {

/// Unreadable, malformed or unsupported WAV file.
class WavError : public Error {
 public:
  using Error::Error;
};

enum class WavFormat { Pcm16, Pcm24, Float32 };

struct WavData {
  int sample_rate = 48000;
  WavFormat format = WavFormat::Float32;
  bool extensible = false;  // written back with a WAVE_FORMAT_EXTENSIBLE header
  std::vector<std::vector<double>> channels;  // samples scaled to [-1, 1)

  std::size_t frames() const { return channels.empty() ? 0 : channels.front().size(); }
};

WavData read_wav(const std::string& path);
void write_wav(const std::string& path, const WavData& wav);

/// In-memory forms of the above.
WavData decode_wav(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_wav(const WavData& wav);

const char* to_string(WavFormat format);

}  // namespace wdf::io
