#include "wdf/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "wdf/circuits/registry.hpp"

namespace wdf::bench {

std::vector<double> noise(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  // Top 53 bits as a fraction in [0, 1), mapped to [-1, 1).
  for (double& x : out) x = std::ldexp(static_cast<double>(rng() >> 11), -52) - 1.0;
  return out;
}

void Checksum::add(std::span<const double> samples) noexcept {
  for (double x : samples) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (bits >> (8 * i)) & 0xff;
      hash_ *= 0x100000001b3ULL;
    }
  }
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

constexpr std::size_t kBlock = 4096;
// Longer runs cycle through this much noise instead of holding all of it.
constexpr std::size_t kNoiseTable = std::size_t{1} << 20;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Processes `total` samples of cyclic input in blocks.
template <typename Sink>
void run_pass(CircuitModel& model, const std::vector<double>& input, std::size_t total,
              std::vector<double>& block, Sink&& sink) {
  std::size_t done = 0;
  std::size_t pos = 0;
  while (done < total) {
    const std::size_t n = std::min({kBlock, total - done, input.size() - pos});
    model.process_block(std::span(input.data() + pos, n), std::span(block.data(), n));
    sink(std::span<const double>(block.data(), n));
    done += n;
    pos += n;
    if (pos == input.size()) pos = 0;
  }
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
  if (!(config.seconds > 0.0) || !std::isfinite(config.seconds))
    throw ParameterError("--seconds must be positive");
  if (!(config.sample_rate > 0.0) || !std::isfinite(config.sample_rate))
    throw ParameterError("--fs must be positive");
  if (config.repeats < 1) throw ParameterError("--repeats must be at least 1");
  if (config.warmup < 0) throw ParameterError("--warmup must be non-negative");

  auto model = make_circuit(config.circuit, config.api, config.sample_kind);
  if (!config.params.empty()) model->set_params(config.params);
  model->prepare(config.sample_rate);

  const auto total = static_cast<std::size_t>(std::llround(config.seconds * config.sample_rate));
  if (total == 0) throw ParameterError("--seconds * --fs rounds to zero samples");
  const std::vector<double> input = noise(std::min(total, kNoiseTable), config.seed);
  std::vector<double> block(kBlock);

  BenchReport report;
  report.seed = config.seed;

  Checksum checksum;
  model->reset();
  run_pass(*model, input, total, block, [&](std::span<const double> out) { checksum.add(out); });
  report.checksum = checksum.value();

  for (int w = 0; w < config.warmup; ++w) {
    model->reset();
    run_pass(*model, input, total, block, [](std::span<const double>) {});
  }

  const double audio_seconds = static_cast<double>(total) / config.sample_rate;
  std::vector<double> walls;
  for (int r = 0; r < config.repeats; ++r) {
    model->reset();
    const auto start = std::chrono::steady_clock::now();
    run_pass(*model, input, total, block, [](std::span<const double>) {});
    const auto stop = std::chrono::steady_clock::now();
    const double wall = std::chrono::duration<double>(stop - start).count();
    walls.push_back(wall);
    report.rows.push_back({config.circuit, std::string(to_string(config.api)),
                           std::string(to_string(config.sample_kind)), audio_seconds, wall,
                           audio_seconds / wall, std::to_string(r)});
  }
  const double med = median(walls);
  report.rows.push_back({config.circuit, std::string(to_string(config.api)),
                         std::string(to_string(config.sample_kind)), audio_seconds, med,
                         audio_seconds / med, "median"});
  return report;
}

void write_csv(std::ostream& out, const BenchReport& report) {
  char meta[96];
  std::snprintf(meta, sizeof meta, "# seed=%" PRIu64 ", checksum=%016" PRIx64, report.seed,
                report.checksum);
  out << meta << '\n' << kCsvHeader << '\n';
  for (const auto& r : report.rows)
    out << r.circuit << ',' << r.api << ',' << r.sample_type << ',' << format_double(r.audio_seconds)
        << ',' << format_double(r.wall_seconds) << ',' << format_double(r.realtime_factor) << ','
        << r.repeat_index << '\n';
}

BenchReport read_csv(std::istream& in) {
  BenchReport report;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::uint64_t seed = 0, checksum = 0;
      if (std::sscanf(line.c_str(), "# seed=%" SCNu64 ", checksum=%" SCNx64, &seed, &checksum) == 2) {
        report.seed = seed;
        report.checksum = checksum;
      }
      continue;
    }
    if (!header) {
      if (line != kCsvHeader) throw ParameterError("unexpected CSV header: " + line);
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream fields(line);
    for (std::string cell; std::getline(fields, cell, ',');) f.push_back(cell);
    if (f.size() != 7) throw ParameterError("CSV row needs 7 fields: " + line);
    try {
      report.rows.push_back({f[0], f[1], f[2], std::stod(f[3]), std::stod(f[4]), std::stod(f[5]), f[6]});
    } catch (const std::exception&) {
      throw ParameterError("CSV row has a malformed number: " + line);
    }
  }
  if (!header) throw ParameterError("CSV header missing");
  return report;
}

}  // namespace wdf::bench
