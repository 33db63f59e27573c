#pragma once

// RC diode clipper: source behind Rin, capacitor to ground and an
// antiparallel diode pair across the capacitor.

#include <array>

#include "wdf/api.hpp"
#include "wdf/circuits/linear.hpp"

namespace wdf::circuits {

template <typename Api, typename T = double>
class DiodeClipper {
 public:
  static constexpr std::string_view name = "diode_clipper";
  static constexpr double kRin = 4.7e3;
  static constexpr double kC = 47e-9;
  static constexpr std::array<ParamSpec, 2> params{{
      {"rin", 10.0, 1e6, kRin, "ohm"},
      {"c", 1e-12, 1e-3, kC, "farad"},
  }};

  explicit DiodeClipper(DiodeParams diode = {}, OmegaEvaluator evaluator = OmegaEvaluator::Fast)
      : vin_(T(kRin)), c_(T(kC)), p1_(vin_, c_), dp_(p1_, diode, evaluator) {}

  void prepare(double fs) { c_.prepare(fs); }
  void reset() { c_.reset(); }
  void set_param(int index, double value) {
    if (index == 0)
      vin_.set_resistance(T(value));
    else
      c_.set_capacitance(T(value));
  }
  template <typename Fn>
  void update(Fn&& fn) {
    deferred_update(dp_, fn);
  }
  const TreeNode& root() const { return dp_; }
  void set_evaluator(OmegaEvaluator evaluator) { dp_.set_evaluator(evaluator); }

  inline T process(T x) noexcept {
    vin_.set_voltage(x);
    step(dp_, p1_);
    return voltage<T>(c_);
  }

 private:
  using Vs = typename Api::template ResistiveVoltageSource<T>;
  using C = typename Api::template Capacitor<T>;
  using P1 = typename Api::template Parallel<T, Vs, C>;

  Vs vin_;
  C c_;
  P1 p1_;
  typename Api::template DiodePair<T, P1> dp_;
};

}  // namespace wdf::circuits
