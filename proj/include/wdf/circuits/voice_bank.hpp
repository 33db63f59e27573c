#pragma once

// Four independent one-pole voices summed to one output. With a batch sample
// type each lane is a voice; with a scalar type the voices run one after the
// other.

#include <array>

#include "wdf/api.hpp"
#include "wdf/circuits/linear.hpp"

namespace wdf::circuits {

inline constexpr int kVoiceCount = 4;

/// Vin - Rpitch - (C || Rload), output V(C).
template <typename Api, typename T>
class Voice {
 public:
  static constexpr double kC = 10e-9;
  static constexpr double kLoad = 10e3;

  Voice() : rp_(T(1e3)), c_(T(kC)), rl_(T(kLoad)), p1_(c_, rl_), s1_(rp_, p1_), inv_(s1_),
            vin_(inv_) {}

  void prepare(double fs) { c_.prepare(fs); }
  void reset() { c_.reset(); }
  typename Api::template Resistor<T>& pitch() { return rp_; }
  const TreeNode& root() const { return vin_; }

  inline T process(T x) noexcept {
    vin_.set_voltage(x);
    step(vin_, inv_);
    return voltage<T>(c_);
  }

 private:
  using R = typename Api::template Resistor<T>;
  using C = typename Api::template Capacitor<T>;
  using P1 = typename Api::template Parallel<T, C, R>;
  using S1 = typename Api::template Series<T, R, P1>;
  using Inv = typename Api::template Inverter<T, S1>;

  R rp_;
  C c_;
  R rl_;
  P1 p1_;
  S1 s1_;
  Inv inv_;
  typename Api::template IdealVoltageSource<T, Inv> vin_;
};

template <typename Api, typename T>
class VoiceBank {
  static constexpr int kLanes = lanes_of<T>;
  static constexpr int kInstances = kVoiceCount / kLanes;
  static_assert(kVoiceCount % kLanes == 0);
  using Scalar = ScalarOf<T>;

 public:
  static constexpr std::string_view name = "poly_voice_bank";
  static constexpr std::array<ParamSpec, 8> params{{
      {"pitch0", 100.0, 1e6, 1e3, "ohm"},
      {"pitch1", 100.0, 1e6, 2e3, "ohm"},
      {"pitch2", 100.0, 1e6, 3e3, "ohm"},
      {"pitch3", 100.0, 1e6, 4e3, "ohm"},
      {"level0", 0.0, 1.0, 1.0, "gain"},
      {"level1", 0.0, 1.0, 1.0, "gain"},
      {"level2", 0.0, 1.0, 1.0, "gain"},
      {"level3", 0.0, 1.0, 1.0, "gain"},
  }};

  VoiceBank() {
    for (int v = 0; v < kVoiceCount; ++v) {
      set_pitch(v, params[static_cast<std::size_t>(v)].default_value);
      set_level(v, 1.0);
    }
  }

  void prepare(double fs) {
    for (auto& voice : voices_) voice.prepare(fs);
  }
  void reset() {
    for (auto& voice : voices_) voice.reset();
  }
  void set_param(int index, double value) {
    if (index < kVoiceCount)
      set_pitch(index, value);
    else
      set_level(index - kVoiceCount, value);
  }
  template <typename Fn>
  void update(Fn&& fn) {
    fn();
  }
  const TreeNode& root() const { return voices_[0].root(); }

  void set_pitch(int voice, double ohms) {
    auto& r = voices_[static_cast<std::size_t>(voice / kLanes)].pitch();
    T value = r.resistance();
    set_lane(value, voice % kLanes, static_cast<Scalar>(ohms));
    r.set_resistance(value);
  }
  void set_level(int voice, double gain) {
    set_lane(level_[static_cast<std::size_t>(voice / kLanes)], voice % kLanes,
             static_cast<Scalar>(gain));
  }

  /// Per-voice outputs of the last sample, one lane per voice.
  const std::array<T, kInstances>& voice_outputs() const noexcept { return out_; }

  inline double process(double x) noexcept {
    const T in(static_cast<Scalar>(x));
    Scalar sum(0);
    for (int i = 0; i < kInstances; ++i) {
      out_[i] = voices_[i].process(in * level_[i]);
      sum += reduce_add(out_[i]);
    }
    return static_cast<double>(sum);
  }

 private:
  std::array<Voice<Api, T>, kInstances> voices_;
  std::array<T, kInstances> level_{};
  std::array<T, kInstances> out_{};
};

}  // namespace wdf::circuits
