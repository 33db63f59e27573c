#include "wdf/io/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace wdf::io {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

// Tail of the KSDATAFORMAT_SUBTYPE GUIDs; the first two bytes carry the tag.
constexpr std::uint8_t kGuidTail[14] = {0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x80,
                                        0x00, 0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};

std::uint32_t get_u32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}
std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

int bytes_per_sample(WavFormat f) {
  switch (f) {
    case WavFormat::Pcm16: return 2;
    case WavFormat::Pcm24: return 3;
    case WavFormat::Float32: return 4;
  }
  return 4;
}

double decode_sample(const std::uint8_t* p, WavFormat f) {
  switch (f) {
    case WavFormat::Pcm16:
      return static_cast<std::int16_t>(get_u16(p)) / 32768.0;
    case WavFormat::Pcm24: {
      std::int32_t v = p[0] | p[1] << 8 | p[2] << 16;
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    case WavFormat::Float32:
      return std::bit_cast<float>(get_u32(p));
  }
  return 0.0;
}

void encode_sample(std::vector<std::uint8_t>& out, double x, WavFormat f) {
  switch (f) {
    case WavFormat::Pcm16: {
      const double s = std::clamp(std::nearbyint(x * 32768.0), -32768.0, 32767.0);
      put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(s)));
      break;
    }
    case WavFormat::Pcm24: {
      const double s = std::clamp(std::nearbyint(x * 8388608.0), -8388608.0, 8388607.0);
      const auto v = static_cast<std::uint32_t>(static_cast<std::int32_t>(s));
      for (int i = 0; i < 3; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
      break;
    }
    case WavFormat::Float32:
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
      break;
  }
}

}  // namespace

const char* to_string(WavFormat format) {
  switch (format) {
    case WavFormat::Pcm16: return "pcm16";
    case WavFormat::Pcm24: return "pcm24";
    case WavFormat::Float32: return "float32";
  }
  return "?";
}

WavData decode_wav(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw WavError("not a RIFF/WAVE file");

  WavData wav;
  int channels = 0;
  bool have_fmt = false;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::size_t size = get_u32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;

    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || size > available) throw WavError("truncated fmt chunk");
      const std::uint8_t* f = chunk + 8;
      std::uint16_t tag = get_u16(f);
      channels = get_u16(f + 2);
      wav.sample_rate = static_cast<int>(get_u32(f + 4));
      const int bits = get_u16(f + 14);
      if (tag == kFormatExtensible) {
        if (size < 40) throw WavError("truncated extensible fmt chunk");
        if (std::memcmp(f + 26, kGuidTail, sizeof kGuidTail) != 0)
          throw WavError("unsupported extensible sub-format");
        tag = get_u16(f + 24);
        wav.extensible = true;
      }
      if (tag == kFormatPcm && bits == 16)
        wav.format = WavFormat::Pcm16;
      else if (tag == kFormatPcm && bits == 24)
        wav.format = WavFormat::Pcm24;
      else if (tag == kFormatFloat && bits == 32)
        wav.format = WavFormat::Float32;
      else
        throw WavError("unsupported sample format (tag " + std::to_string(tag) + ", " +
                       std::to_string(bits) + " bits)");
      const int block_align = get_u16(f + 12);
      if (channels < 1 || block_align != channels * bytes_per_sample(wav.format))
        throw WavError("inconsistent channel count or block alignment");
      if (wav.sample_rate <= 0) throw WavError("invalid sample rate");
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      // Tolerate a data size that overruns the file (streamed writers).
      data_size = std::min(size, available);
    }
    if (size > available) break;
    pos = body + size + (size & 1);
  }

  if (!have_fmt) throw WavError("missing fmt chunk");
  if (data == nullptr) throw WavError("missing data chunk");

  const std::size_t frame_bytes =
      static_cast<std::size_t>(channels) * static_cast<std::size_t>(bytes_per_sample(wav.format));
  const std::size_t frames = data_size / frame_bytes;
  wav.channels.assign(static_cast<std::size_t>(channels), std::vector<double>(frames));
  const int bps = bytes_per_sample(wav.format);
  for (std::size_t n = 0; n < frames; ++n)
    for (int c = 0; c < channels; ++c)
      wav.channels[static_cast<std::size_t>(c)][n] =
          decode_sample(data + n * frame_bytes + static_cast<std::size_t>(c * bps), wav.format);
  return wav;
}

std::vector<std::uint8_t> encode_wav(const WavData& wav) {
  if (wav.channels.empty()) throw WavError("no channels to write");
  const std::size_t frames = wav.frames();
  for (const auto& ch : wav.channels)
    if (ch.size() != frames) throw WavError("channels differ in length");

  const auto channels = static_cast<std::uint16_t>(wav.channels.size());
  const int bps = bytes_per_sample(wav.format);
  const std::uint16_t tag = wav.format == WavFormat::Float32 ? kFormatFloat : kFormatPcm;
  const std::uint32_t fmt_size = wav.extensible ? 40 : (tag == kFormatFloat ? 18 : 16);
  const std::size_t data_size = frames * channels * static_cast<std::size_t>(bps);
  const bool needs_fact = tag == kFormatFloat || wav.extensible;

  std::vector<std::uint8_t> out;
  out.reserve(data_size + 80);
  put_tag(out, "RIFF");
  put_u32(out, 0);  // patched below
  put_tag(out, "WAVE");

  put_tag(out, "fmt ");
  put_u32(out, fmt_size);
  put_u16(out, wav.extensible ? kFormatExtensible : tag);
  put_u16(out, channels);
  put_u32(out, static_cast<std::uint32_t>(wav.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(wav.sample_rate) * channels * static_cast<std::uint32_t>(bps));
  put_u16(out, static_cast<std::uint16_t>(channels * bps));
  put_u16(out, static_cast<std::uint16_t>(8 * bps));
  if (wav.extensible) {
    put_u16(out, 22);
    put_u16(out, static_cast<std::uint16_t>(8 * bps));
    put_u32(out, 0);  // no speaker mask
    put_u16(out, tag);
    out.insert(out.end(), std::begin(kGuidTail), std::end(kGuidTail));
  } else if (fmt_size == 18) {
    put_u16(out, 0);
  }
  if (needs_fact) {
    put_tag(out, "fact");
    put_u32(out, 4);
    put_u32(out, static_cast<std::uint32_t>(frames));
  }

  put_tag(out, "data");
  put_u32(out, static_cast<std::uint32_t>(data_size));
  for (std::size_t n = 0; n < frames; ++n)
    for (const auto& ch : wav.channels) encode_sample(out, ch[n], wav.format);
  if (data_size & 1) out.push_back(0);

  const auto riff = static_cast<std::uint32_t>(out.size() - 8);
  for (int i = 0; i < 4; ++i) out[4 + i] = static_cast<std::uint8_t>(riff >> (8 * i));
  return out;
}

WavData read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WavError("cannot open '" + path + "'");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return decode_wav(bytes);
}

void write_wav(const std::string& path, const WavData& wav) {
  const auto bytes = encode_wav(wav);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WavError("cannot create '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw WavError("failed writing '" + path + "'");
}

}  // namespace wdf::io
