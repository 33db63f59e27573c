#pragma once

// Benchmark harness: seeded noise through a circuit model, timed with a
// monotonic clock, reported as CSV.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wdf/circuits/model.hpp"

namespace wdf::bench {

/// Uniform noise on [-1, 1) from a 64-bit Mersenne Twister.
std::vector<double> noise(std::size_t count, std::uint64_t seed);

/// FNV-1a over the IEEE-754 bytes of every sample.
class Checksum {
 public:
  void add(std::span<const double> samples) noexcept;
  std::uint64_t value() const noexcept { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

double median(std::vector<double> values);

struct BenchConfig {
  std::string circuit;
  ApiKind api = ApiKind::Early;
  SampleKind sample_kind = SampleKind::Scalar;
  double seconds = 10.0;
  double sample_rate = 48000.0;
  int warmup = 1;
  int repeats = 5;
  std::uint64_t seed = 1;
  std::vector<std::pair<std::string, double>> params;
};

struct BenchResult {
  std::string circuit;
  std::string api;
  std::string sample_type;
  double audio_seconds = 0.0;
  double wall_seconds = 0.0;
  double realtime_factor = 0.0;
  std::string repeat_index;  // "0".."R-1" or "median"

  bool operator==(const BenchResult&) const = default;
};

struct BenchReport {
  std::uint64_t seed = 0;
  std::uint64_t checksum = 0;
  std::vector<BenchResult> rows;  // one per repeat, then the median row

  const BenchResult& median_row() const { return rows.back(); }
};

/// Runs one untimed checksum pass, `warmup` untimed passes and `repeats`
/// timed passes. The model is reset before every pass, so all passes see
/// identical input and state.
BenchReport run_bench(const BenchConfig& config);

inline constexpr const char* kCsvHeader =
    "circuit,api,sample_type,audio_seconds,wall_seconds,realtime_factor,repeat_index";

/// Metadata comment line, header, then one line per row.
void write_csv(std::ostream& out, const BenchReport& report);
/// Inverse of write_csv; throws ParameterError on malformed input.
BenchReport read_csv(std::istream& in);

}  // namespace wdf::bench
