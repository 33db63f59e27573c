#pragma once

// Memoryless dividers and RC lowpass ladders.

#include <array>

#include "wdf/api.hpp"
#include "wdf/circuits/model.hpp"

namespace wdf::circuits {

/// One sample through a single-child root: upward pass, root, downward pass.
template <typename Root, typename Child>
inline void step(Root& root, Child& child) noexcept {
  root.incident(child.reflected());
  child.incident(root.reflected());
}

/// Vin -> R1 -> R2 -> ground, output V(R2).
template <typename Api, typename T = double>
class VoltageDivider {
 public:
  static constexpr std::string_view name = "voltage_divider";
  static constexpr std::array<ParamSpec, 2> params{{
      {"r1", 1.0, 1e7, 1e3, "ohm"},
      {"r2", 1.0, 1e7, 1e3, "ohm"},
  }};

  VoltageDivider() : r1_(T(1e3)), r2_(T(1e3)), s1_(r1_, r2_), inv_(s1_), vin_(inv_) {}

  void prepare(double) {}
  void reset() {}
  void set_param(int index, double value) {
    (index == 0 ? r1_ : r2_).set_resistance(T(value));
  }
  template <typename Fn>
  void update(Fn&& fn) {
    deferred_update(vin_, fn);
  }
  const TreeNode& root() const { return vin_; }

  inline T process(T x) noexcept {
    vin_.set_voltage(x);
    step(vin_, inv_);
    return voltage<T>(r2_);
  }

  typename Api::template Resistor<T>& r2() { return r2_; }

 private:
  using R = typename Api::template Resistor<T>;
  using S1 = typename Api::template Series<T, R, R>;
  using Inv = typename Api::template Inverter<T, S1>;

  R r1_;
  R r2_;
  S1 s1_;
  Inv inv_;
  typename Api::template IdealVoltageSource<T, Inv> vin_;
};

/// Ideal current source (input sample in amps) into R1 || R2, output I(R2).
template <typename Api, typename T = double>
class CurrentDivider {
 public:
  static constexpr std::string_view name = "current_divider";
  static constexpr std::array<ParamSpec, 2> params{{
      {"r1", 1.0, 1e7, 1e3, "ohm"},
      {"r2", 1.0, 1e7, 1e3, "ohm"},
  }};

  CurrentDivider() : r1_(T(1e3)), r2_(T(1e3)), p1_(r1_, r2_), iin_(p1_) {}

  void prepare(double) {}
  void reset() {}
  void set_param(int index, double value) {
    (index == 0 ? r1_ : r2_).set_resistance(T(value));
  }
  template <typename Fn>
  void update(Fn&& fn) {
    deferred_update(iin_, fn);
  }
  const TreeNode& root() const { return iin_; }

  inline T process(T x) noexcept {
    iin_.set_current(x);
    step(iin_, p1_);
    return current<T>(r2_);
  }

 private:
  using R = typename Api::template Resistor<T>;
  using P1 = typename Api::template Parallel<T, R, R>;

  R r1_;
  R r2_;
  P1 p1_;
  typename Api::template IdealCurrentSource<T, P1> iin_;
};

/// First-order RC lowpass, output V(C).
template <typename Api, typename T = double>
class RcLowpass {
 public:
  static constexpr std::string_view name = "rc_lowpass";
  static constexpr double kR = 1e3;
  static constexpr double kC = 33e-9;
  static constexpr std::array<ParamSpec, 2> params{{
      {"r", 1.0, 1e7, kR, "ohm"},
      {"c", 1e-12, 1e-3, kC, "farad"},
  }};

  RcLowpass() : r_(T(kR)), c_(T(kC)), s1_(r_, c_), inv_(s1_), vin_(inv_) {}

  void prepare(double fs) { c_.prepare(fs); }
  void reset() { c_.reset(); }
  void set_param(int index, double value) {
    if (index == 0)
      r_.set_resistance(T(value));
    else
      c_.set_capacitance(T(value));
  }
  template <typename Fn>
  void update(Fn&& fn) {
    deferred_update(vin_, fn);
  }
  const TreeNode& root() const { return vin_; }

  inline T process(T x) noexcept {
    vin_.set_voltage(x);
    step(vin_, inv_);
    return voltage<T>(c_);
  }

 private:
  using R = typename Api::template Resistor<T>;
  using C = typename Api::template Capacitor<T>;
  using S1 = typename Api::template Series<T, R, C>;
  using Inv = typename Api::template Inverter<T, S1>;

  R r_;
  C c_;
  S1 s1_;
  Inv inv_;
  typename Api::template IdealVoltageSource<T, Inv> vin_;
};

/// Two-section RC ladder: Vin - R1 - (C1 || (R2 - C2)), output V(C2).
template <typename Api, typename T = double>
class Lpf2 {
 public:
  static constexpr std::string_view name = "lpf2";
  static constexpr double kR1 = 1e3;
  static constexpr double kC1 = 33e-9;
  static constexpr double kR2 = 1e3;
  static constexpr double kC2 = 33e-9;
  static constexpr std::array<ParamSpec, 4> params{{
      {"r1", 1.0, 1e7, kR1, "ohm"},
      {"c1", 1e-12, 1e-3, kC1, "farad"},
      {"r2", 1.0, 1e7, kR2, "ohm"},
      {"c2", 1e-12, 1e-3, kC2, "farad"},
  }};

  Lpf2()
      : r1_(T(kR1)),
        c1_(T(kC1)),
        r2_(T(kR2)),
        c2_(T(kC2)),
        s2_(r2_, c2_),
        p1_(c1_, s2_),
        s1_(r1_, p1_),
        vin_(s1_) {}

  void prepare(double fs) {
    UpdateSession session(vin_);
    c1_.prepare(fs);
    c2_.prepare(fs);
  }
  void reset() {
    c1_.reset();
    c2_.reset();
  }
  void set_param(int index, double value) {
    switch (index) {
      case 0: r1_.set_resistance(T(value)); break;
      case 1: c1_.set_capacitance(T(value)); break;
      case 2: r2_.set_resistance(T(value)); break;
      default: c2_.set_capacitance(T(value)); break;
    }
  }
  template <typename Fn>
  void update(Fn&& fn) {
    deferred_update(vin_, fn);
  }
  const TreeNode& root() const { return vin_; }

  inline T process(T x) noexcept {
    vin_.set_voltage(x);
    step(vin_, s1_);
    return voltage<T>(c2_);
  }

 private:
  using R = typename Api::template Resistor<T>;
  using C = typename Api::template Capacitor<T>;
  using S2 = typename Api::template Series<T, R, C>;
  using P1 = typename Api::template Parallel<T, C, S2>;
  using S1 = typename Api::template Series<T, R, P1>;

  R r1_;
  C c1_;
  R r2_;
  C c2_;
  S2 s2_;
  P1 p1_;
  S1 s1_;
  typename Api::template IdealVoltageSource<T, S1> vin_;
};

}  // namespace wdf::circuits
