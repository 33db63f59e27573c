#pragma once

// Helpers shared by the test binaries: error metrics, seeded inputs and the
// reference nets that describe each shipped circuit to the MNA solver.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <type_traits>
#include <vector>

#include "wdf/circuits/model.hpp"
#include "wdf/circuits/tone_stack.hpp"
#include "wdf/oracle/net.hpp"

namespace wdf::test {

/// Distance in units in the last place between two finite values.
template <typename F>
std::int64_t ulp_distance(F x, F y) {
  using I = std::conditional_t<sizeof(F) == 8, std::int64_t, std::int32_t>;
  auto ordered = [](F v) -> std::int64_t {
    const I bits = std::bit_cast<I>(v);
    return bits < 0 ? std::int64_t(std::numeric_limits<I>::min()) - bits : std::int64_t(bits);
  };
  const std::int64_t d = ordered(x) - ordered(y);
  return d < 0 ? -d : d;
}

inline double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
    worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

inline double rms(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(std::max<std::size_t>(x.size(), 1)));
}

/// rms(x - ref) / rms(ref).
inline double relative_rms(std::span<const double> x, std::span<const double> ref) {
  std::vector<double> diff(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) diff[i] = x[i] - ref[i];
  return rms(diff) / rms(ref);
}

inline std::vector<double> uniform_noise(std::size_t n, std::uint64_t seed, double amplitude = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

inline std::vector<double> sine(std::size_t n, double freq, double fs, double amplitude) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / fs);
  return out;
}

inline std::vector<double> run(CircuitModel& model, std::span<const double> input) {
  std::vector<double> out(input.size());
  model.process_block(input, out);
  return out;
}

// ------------------------------------------------------------ reference nets
//
// Every net is driven by the input sample through a voltage source on node 1
// (or a current source for the current divider). The comment on each
// function names the node or branch that corresponds to the circuit output.

using oracle::BranchKind;
using oracle::NetDescription;

/// Output: V(2).
inline NetDescription divider_net(double r1, double r2) {
  NetDescription net;
  net.add(BranchKind::VoltageSource, 1, 0, 1.0, true);
  net.add(BranchKind::Resistor, 1, 2, r1);
  net.add(BranchKind::Resistor, 2, 0, r2);
  return net;
}

/// Input amps pushed into node 1. Output: current of branch 2 (R2, 1 -> 0).
inline NetDescription current_divider_net(double r1, double r2) {
  NetDescription net;
  net.add(BranchKind::CurrentSource, 0, 1, 1.0, true);
  net.add(BranchKind::Resistor, 1, 0, r1);
  net.add(BranchKind::Resistor, 1, 0, r2);
  return net;
}

/// Output: V(2).
inline NetDescription rc_net(double r, double c) {
  NetDescription net;
  net.add(BranchKind::VoltageSource, 1, 0, 1.0, true);
  net.add(BranchKind::Resistor, 1, 2, r);
  net.add(BranchKind::Capacitor, 2, 0, c);
  return net;
}

/// Output: V(3).
inline NetDescription lpf2_net(double r1, double c1, double r2, double c2) {
  NetDescription net;
  net.add(BranchKind::VoltageSource, 1, 0, 1.0, true);
  net.add(BranchKind::Resistor, 1, 2, r1);
  net.add(BranchKind::Capacitor, 2, 0, c1);
  net.add(BranchKind::Resistor, 2, 3, r2);
  net.add(BranchKind::Capacitor, 3, 0, c2);
  return net;
}

/// Output: V(2).
inline NetDescription diode_clipper_net(double rin, double c, const DiodeParams& diode = {}) {
  NetDescription net;
  net.add(BranchKind::VoltageSource, 1, 0, 1.0, true);
  net.add(BranchKind::Resistor, 1, 2, rin);
  net.add(BranchKind::Capacitor, 2, 0, c);
  net.add_diode(BranchKind::DiodePair, 2, 0, diode);
  return net;
}

/// Tone stack as drawn: input node 1 behind the source resistance, C1 to
/// the top of the treble pot, wiper at node 6, bottom of the treble pot at
/// the bass pot (node 2), bass pot down to the mid pot (node 3), mid pot to
/// ground, slope resistor from input to node 4, C2 from node 4 to node 2 and
/// C3 from node 4 to node 3. Output: V(6).
inline NetDescription tone_stack_net(double bass, double mid, double treble) {
  using TS = circuits::ToneStack<EarlyApi, double>;
  const auto& v = TS::values;
  NetDescription net;
  net.add(BranchKind::VoltageSource, 7, 0, 1.0, true);
  net.add(BranchKind::Resistor, 7, 1, v.rs);
  net.add(BranchKind::Capacitor, 1, 5, v.c1);
  net.add(BranchKind::Resistor, 5, 6, TS::treble_top(treble));
  net.add(BranchKind::Resistor, 6, 2, TS::treble_bottom(treble));
  net.add(BranchKind::Resistor, 2, 3, TS::bass_leg(bass));
  net.add(BranchKind::Resistor, 3, 0, TS::mid_leg(mid));
  net.add(BranchKind::Resistor, 1, 4, v.r4);
  net.add(BranchKind::Capacitor, 4, 2, v.c2);
  net.add(BranchKind::Capacitor, 4, 3, v.c3);
  return net;
}
inline constexpr int kToneStackOutputNode = 6;

/// One voice of the voice bank. Output: V(2).
inline NetDescription voice_net(double pitch, double level, double c, double load) {
  NetDescription net;
  net.add(BranchKind::VoltageSource, 1, 0, level, true);
  net.add(BranchKind::Resistor, 1, 2, pitch);
  net.add(BranchKind::Capacitor, 2, 0, c);
  net.add(BranchKind::Resistor, 2, 0, load);
  return net;
}

}  // namespace wdf::test
