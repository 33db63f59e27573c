#pragma once

// Three-knob passive tone stack (bass, mid, treble) around a root R-type
// junction. Junction nodes: 0 ground, 1 input, 2 bass-pot top, 3 mid-pot
// top, 4 the node between the slope resistor and the two lower capacitors.

#include <array>

#include "wdf/api.hpp"
#include "wdf/circuits/linear.hpp"

namespace wdf::circuits {

struct ToneStackValues {
  double c1 = 250e-12;   // treble cap, input to treble pot
  double c2 = 20e-9;     // node 4 to bass pot
  double c3 = 20e-9;     // node 4 to mid pot
  double r1 = 250e3;     // treble pot
  double r2 = 1e6;       // bass pot
  double r3 = 25e3;      // mid pot
  double r4 = 56e3;      // slope resistor, input to node 4
  double rs = 1.0;       // source resistance
  double pot_floor = 1.0;  // keeps every pot leg strictly positive
};

/// The 7-port junction: every port is a WDF child.
inline ResistiveJunction tone_stack_junction() {
  ResistiveJunction j;
  j.node_count = 5;
  j.ports = {
      {1, 0},  // source
      {1, 2},  // C1 + treble pot
      {2, 3},  // bass pot
      {3, 0},  // mid pot
      {1, 4},  // R4
      {4, 2},  // C2
      {4, 3},  // C3
  };
  return j;
}

template <typename Api, typename T = double>
class ToneStack {
 public:
  static constexpr std::string_view name = "bassman_tone_stack";
  static constexpr std::array<ParamSpec, 3> params{{
      {"bass", 0.0, 1.0, 0.5, "position"},
      {"mid", 0.0, 1.0, 0.5, "position"},
      {"treble", 0.0, 1.0, 0.5, "position"},
  }};
  static constexpr ToneStackValues values{};

  ToneStack()
      : vin_(T(values.rs)),
        c1_(T(values.c1)),
        r1a_(T(treble_top(0.5))),
        r1b_(T(treble_bottom(0.5))),
        s_treble_(r1a_, r1b_),
        s_branch_(c1_, s_treble_),
        r2_(T(bass_leg(0.5))),
        r3_(T(mid_leg(0.5))),
        r4_(T(values.r4)),
        c2_(T(values.c2)),
        c3_(T(values.c3)),
        junction_(JunctionCalculator(tone_stack_junction()), vin_, s_branch_, r2_, r3_, r4_,
                  c2_, c3_) {}

  static double treble_top(double t) { return (1.0 - t) * values.r1 + values.pot_floor; }
  static double treble_bottom(double t) { return t * values.r1 + values.pot_floor; }
  static double bass_leg(double b) { return b * values.r2 + values.pot_floor; }
  static double mid_leg(double m) { return m * values.r3 + values.pot_floor; }

  void prepare(double fs) {
    UpdateSession session(junction_);
    c1_.prepare(fs);
    c2_.prepare(fs);
    c3_.prepare(fs);
  }
  void reset() {
    c1_.reset();
    c2_.reset();
    c3_.reset();
  }
  void set_param(int index, double value) {
    switch (index) {
      case 0: r2_.set_resistance(T(bass_leg(value))); break;
      case 1: r3_.set_resistance(T(mid_leg(value))); break;
      default: {
        UpdateSession session(junction_);
        r1a_.set_resistance(T(treble_top(value)));
        r1b_.set_resistance(T(treble_bottom(value)));
      }
    }
  }
  template <typename Fn>
  void update(Fn&& fn) {
    deferred_update(junction_, fn);
  }
  const TreeNode& root() const { return junction_; }

  inline T process(T x) noexcept {
    vin_.set_voltage(x);
    junction_.compute();
    // Treble wiper: input node minus the drops across C1 and the top leg.
    return voltage<T>(vin_) + voltage<T>(c1_) - voltage<T>(r1a_);
  }

 private:
  using R = typename Api::template Resistor<T>;
  using C = typename Api::template Capacitor<T>;
  using Vs = typename Api::template ResistiveVoltageSource<T>;
  using STreble = typename Api::template Series<T, R, R>;
  using SBranch = typename Api::template Series<T, C, STreble>;
  using Junction =
      typename Api::template RootRtype<T, JunctionCalculator, Vs, SBranch, R, R, R, C, C>;

  Vs vin_;
  C c1_;
  R r1a_;
  R r1b_;
  STreble s_treble_;
  SBranch s_branch_;
  R r2_;
  R r3_;
  R r4_;
  C c2_;
  C c3_;
  Junction junction_;
};

}  // namespace wdf::circuits
