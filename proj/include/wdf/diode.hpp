#pragma once

// Diode root elements solved in closed form with the Wright omega function.

#include <cmath>

#include "wdf/diode_params.hpp"
#include "wdf/elements.hpp"
#include "wdf/omega.hpp"

namespace wdf {

namespace detail {

/// Per-port constants of the wave-domain diode law.
struct DiodeConstants {
  double r = 1.0;         // port resistance
  double r_is = 0.0;      // R Is
  double log_term = 0.0;  // ln(R Is / (n Vt))
  double nvt = 1.0;
  double is = 0.0;

  DiodeConstants() = default;
  DiodeConstants(double resistance, const DiodeParams& p)
      : r(resistance),
        r_is(resistance * p.saturation_current),
        log_term(std::log(resistance * p.saturation_current / p.nvt())),
        nvt(p.nvt()),
        is(p.saturation_current) {}
};

// Newton refinement of the closed form. The fast omega leaves about 1e-5
// relative error; the pair's closed form also models only the conducting
// branch. Each step is one exp and one divide.
inline constexpr int kSinglePolishFast = 1;
inline constexpr int kSinglePolishExact = 0;
inline constexpr int kPairPolishFast = 3;
inline constexpr int kPairPolishExact = 3;

/// Single diode, anode at the port's positive terminal.
inline double diode_reflect(double a, const DiodeConstants& k, OmegaEvaluator ev) {
  const double w = omega(k.log_term + (a + k.r_is) / k.nvt, ev);
  double v = a + k.r_is - k.nvt * w;
  const int steps = ev == OmegaEvaluator::Fast ? kSinglePolishFast : kSinglePolishExact;
  for (int s = 0; s < steps; ++s) {
    // g(v) = (a - v) / R - Is (exp(v / nVt) - 1)
    const double e = std::exp(v / k.nvt);
    const double g = (a - v) / k.r - k.is * (e - 1.0);
    const double dg = -1.0 / k.r - k.is * e / k.nvt;
    v -= g / dg;
  }
  return 2.0 * v - a;
}

/// Antiparallel pair. Solved on |a| and mirrored, so b(-a) = -b(a) exactly.
inline double diode_pair_reflect(double a, const DiodeConstants& k, OmegaEvaluator ev) {
  const double mag = std::abs(a);
  const double w = omega(k.log_term + (mag + k.r_is) / k.nvt, ev);
  double v = mag + k.r_is - k.nvt * w;
  const int steps = ev == OmegaEvaluator::Fast ? kPairPolishFast : kPairPolishExact;
  for (int s = 0; s < steps; ++s) {
    // g(v) = (|a| - v) / R - 2 Is sinh(v / nVt)
    const double e = std::exp(v / k.nvt);
    const double inv = 1.0 / e;
    const double g = (mag - v) / k.r - k.is * (e - inv);
    const double dg = -1.0 / k.r - k.is * (e + inv) / k.nvt;
    v -= g / dg;
  }
  const double b = 2.0 * v - mag;
  // sign(a) with sign(0) = 0, so a = 0 reflects exactly 0.
  return a < 0.0 ? -b : (a > 0.0 ? b : a);
}

template <typename T, typename Child, typename Base, bool Pair>
class DiodeImpl : public RootImpl<T, Child, Base> {
  static constexpr int kLanes = lanes_of<T>;

 public:
  explicit DiodeImpl(Child& child, DiodeParams params = {},
                     OmegaEvaluator evaluator = OmegaEvaluator::Fast)
      : params_(params), evaluator_(evaluator) {
    params_.validate();
    this->connect(child);
  }

  void set_params(const DiodeParams& params) {
    params.validate();
    params_ = params;
    DiodeImpl::on_impedance_change();
  }
  const DiodeParams& params() const noexcept { return params_; }

  void set_evaluator(OmegaEvaluator evaluator) noexcept { evaluator_ = evaluator; }
  OmegaEvaluator evaluator() const noexcept { return evaluator_; }

  inline T reflected() noexcept {
    T b = this->port.a;
    for (int i = 0; i < kLanes; ++i) {
      const double a = static_cast<double>(lane(this->port.a, i));
      const double out = Pair ? diode_pair_reflect(a, k_[i], evaluator_)
                              : diode_reflect(a, k_[i], evaluator_);
      set_lane(b, i, static_cast<ScalarOf<T>>(out));
    }
    this->port.b = b;
    return b;
  }
  inline void incident(T a) noexcept { this->port.a = a; }

 protected:
  void on_impedance_change() override {
    for (int i = 0; i < kLanes; ++i) {
      const double r = static_cast<double>(lane(this->port.R, i));
      k_[i] = std::isfinite(r) && r > 0.0 ? DiodeConstants(r, params_) : DiodeConstants{};
    }
  }

 private:
  DiodeParams params_;
  OmegaEvaluator evaluator_;
  DiodeConstants k_[kLanes];
};

}  // namespace detail

namespace early {

template <typename T, typename Child>
using Diode = detail::DiodeImpl<T, Child, NodeBase<T>, false>;
template <typename T, typename Child>
using DiodePair = detail::DiodeImpl<T, Child, NodeBase<T>, true>;

}  // namespace early

namespace late {

template <typename T>
using Diode = detail::DiodeImpl<T, Node<T>, Node<T>, false>;
template <typename T>
using DiodePair = detail::DiodeImpl<T, Node<T>, Node<T>, true>;

}  // namespace late

}  // namespace wdf
