#pragma once

// One-port leaf elements and root sources.
//
// Each element is written once against a `Base` that is either
// early::NodeBase<T> (plain member functions) or late::Node<T> (where the same
// reflected()/incident() become overrides of the abstract interface).

#include <limits>
#include <string>

#include "wdf/errors.hpp"
#include "wdf/node.hpp"

namespace wdf {

namespace detail {

template <typename T>
void require_positive(const T& value, const char* what) {
  if (!all_lanes(value, [](auto v) { return v > 0 && std::isfinite(v); }))
    throw ParameterError(std::string(what) + " must be positive and finite");
}

inline void require_sample_rate(double fs) {
  if (!(fs > 0.0) || !std::isfinite(fs))
    throw ParameterError("sample rate must be positive and finite");
}

template <typename T>
inline T unset_impedance() noexcept {
  return T(std::numeric_limits<ScalarOf<T>>::quiet_NaN());
}

template <typename T, typename Base>
class ResistorImpl : public Base {
 public:
  static constexpr bool kReflectsZero = true;

  explicit ResistorImpl(T resistance) : resistance_(resistance) {
    require_positive(resistance, "resistance");
    ResistorImpl::calc_impedance();
  }

  void set_resistance(T resistance) {
    require_positive(resistance, "resistance");
    resistance_ = resistance;
    this->propagate_impedance_change();
  }
  T resistance() const noexcept { return resistance_; }

  inline T reflected() noexcept {
    this->port.b = T(0);
    return this->port.b;
  }
  inline void incident(T a) noexcept { this->port.a = a; }

 protected:
  void calc_impedance() override { this->port.set_impedance(resistance_); }

 private:
  T resistance_;
};

/// Trapezoidal capacitor: R = 1 / (2 fs C), b[n] = a[n-1].
template <typename T, typename Base>
class CapacitorImpl : public Base {
 public:
  explicit CapacitorImpl(T capacitance) : capacitance_(capacitance) {
    require_positive(capacitance, "capacitance");
    CapacitorImpl::calc_impedance();
  }

  void prepare(double sample_rate) {
    require_sample_rate(sample_rate);
    fs_ = sample_rate;
    this->propagate_impedance_change();
  }
  void set_capacitance(T capacitance) {
    require_positive(capacitance, "capacitance");
    capacitance_ = capacitance;
    this->propagate_impedance_change();
  }
  T capacitance() const noexcept { return capacitance_; }
  double sample_rate() const noexcept { return fs_; }
  void reset() noexcept { z_ = T(0); }

  bool is_prepared() const override { return fs_ > 0.0; }

  inline T reflected() noexcept {
    this->port.b = z_;
    return this->port.b;
  }
  inline void incident(T a) noexcept {
    this->port.a = a;
    z_ = a;
  }

 protected:
  void calc_impedance() override {
    if (fs_ <= 0.0) {
      this->port.set_impedance(unset_impedance<T>());
      return;
    }
    this->port.set_impedance(T(1) / (T(ScalarOf<T>(2.0 * fs_)) * capacitance_));
  }

 private:
  T capacitance_;
  T z_{};
  double fs_ = 0.0;
};

/// Trapezoidal inductor: R = 2 fs L, b[n] = -a[n-1].
template <typename T, typename Base>
class InductorImpl : public Base {
 public:
  explicit InductorImpl(T inductance) : inductance_(inductance) {
    require_positive(inductance, "inductance");
    InductorImpl::calc_impedance();
  }

  void prepare(double sample_rate) {
    require_sample_rate(sample_rate);
    fs_ = sample_rate;
    this->propagate_impedance_change();
  }
  void set_inductance(T inductance) {
    require_positive(inductance, "inductance");
    inductance_ = inductance;
    this->propagate_impedance_change();
  }
  T inductance() const noexcept { return inductance_; }
  double sample_rate() const noexcept { return fs_; }
  void reset() noexcept { z_ = T(0); }

  bool is_prepared() const override { return fs_ > 0.0; }

  inline T reflected() noexcept {
    this->port.b = -z_;
    return this->port.b;
  }
  inline void incident(T a) noexcept {
    this->port.a = a;
    z_ = a;
  }

 protected:
  void calc_impedance() override {
    if (fs_ <= 0.0) {
      this->port.set_impedance(unset_impedance<T>());
      return;
    }
    this->port.set_impedance(T(ScalarOf<T>(2.0 * fs_)) * inductance_);
  }

 private:
  T inductance_;
  T z_{};
  double fs_ = 0.0;
};

/// Voltage source Vs in series with Rs; v = Vs + Rs i, so b = Vs.
template <typename T, typename Base>
class ResistiveVoltageSourceImpl : public Base {
 public:
  explicit ResistiveVoltageSourceImpl(T resistance) : resistance_(resistance) {
    require_positive(resistance, "source resistance");
    ResistiveVoltageSourceImpl::calc_impedance();
  }

  void set_voltage(T volts) noexcept { voltage_ = volts; }
  T source_voltage() const noexcept { return voltage_; }
  void set_resistance(T resistance) {
    require_positive(resistance, "source resistance");
    resistance_ = resistance;
    this->propagate_impedance_change();
  }

  inline T reflected() noexcept {
    this->port.b = voltage_;
    return this->port.b;
  }
  inline void incident(T a) noexcept { this->port.a = a; }

 protected:
  void calc_impedance() override { this->port.set_impedance(resistance_); }

 private:
  T resistance_;
  T voltage_{};
};

/// Current source Is in parallel with R, Is driven out of the element into
/// the rest of the circuit; b = R Is.
template <typename T, typename Base>
class ResistiveCurrentSourceImpl : public Base {
 public:
  explicit ResistiveCurrentSourceImpl(T resistance) : resistance_(resistance) {
    require_positive(resistance, "source resistance");
    ResistiveCurrentSourceImpl::calc_impedance();
  }

  void set_current(T amps) noexcept { current_ = amps; }
  T source_current() const noexcept { return current_; }
  void set_resistance(T resistance) {
    require_positive(resistance, "source resistance");
    resistance_ = resistance;
    this->propagate_impedance_change();
  }

  inline T reflected() noexcept {
    this->port.b = this->port.R * current_;
    return this->port.b;
  }
  inline void incident(T a) noexcept { this->port.a = a; }

 protected:
  void calc_impedance() override { this->port.set_impedance(resistance_); }

 private:
  T resistance_;
  T current_{};
};

/// Common plumbing for root elements: one child whose port impedance the
/// root adopts. `Child` is a concrete node type (early) or late::Node<T>.
template <typename T, typename Child, typename Base>
class RootImpl : public Base {
 public:
  RootImpl() = default;

  /// Rebinds the root to a new subtree. Early-bound roots are wired once in
  /// their constructor; late-bound roots may be rewired between samples.
  void connect(Child& child) {
    TreeNode::attach(*this, child);
    if (child_ != nullptr && child_ != &child) TreeNode::detach(*child_);
    child_ = &child;
    this->propagate_impedance_change();
  }

  Child* child() const noexcept { return child_; }

  bool is_prepared() const override {
    return child_ != nullptr && child_->is_prepared();
  }

 protected:
  void calc_impedance() override {
    if (child_ != nullptr) this->port.set_impedance(child_->port.R);
    on_impedance_change();
  }
  virtual void on_impedance_change() {}

  Child* child_ = nullptr;
};

/// Ideal voltage source at the root: b = 2 Vs - a, so the port voltage is Vs.
template <typename T, typename Child, typename Base>
class IdealVoltageSourceImpl : public RootImpl<T, Child, Base> {
 public:
  IdealVoltageSourceImpl() = default;
  explicit IdealVoltageSourceImpl(Child& child) { this->connect(child); }

  void set_voltage(T volts) noexcept { voltage_ = volts; }
  T source_voltage() const noexcept { return voltage_; }

  inline T reflected() noexcept {
    this->port.b = T(2) * voltage_ - this->port.a;
    return this->port.b;
  }
  inline void incident(T a) noexcept { this->port.a = a; }

 private:
  T voltage_{};
};

/// Ideal current source at the root: b = a + 2 R_child Is, driving Is into
/// the child subtree.
template <typename T, typename Child, typename Base>
class IdealCurrentSourceImpl : public RootImpl<T, Child, Base> {
 public:
  IdealCurrentSourceImpl() = default;
  explicit IdealCurrentSourceImpl(Child& child) { this->connect(child); }

  void set_current(T amps) noexcept { current_ = amps; }
  T source_current() const noexcept { return current_; }

  inline T reflected() noexcept {
    this->port.b = this->port.a + two_r_ * current_;
    return this->port.b;
  }
  inline void incident(T a) noexcept { this->port.a = a; }

 protected:
  void on_impedance_change() override { two_r_ = T(2) * this->port.R; }

 private:
  T current_{};
  T two_r_{};
};

}  // namespace detail

/// Throws UnpreparedError if `node` (or anything below it) lacks a sample rate.
inline void require_prepared(const TreeNode& node, const char* what = "circuit") {
  if (!node.is_prepared())
    throw UnpreparedError(std::string(what) +
                          " contains a reactive element that has not been prepared");
}

namespace early {

template <typename T>
using Resistor = detail::ResistorImpl<T, NodeBase<T>>;
template <typename T>
using Capacitor = detail::CapacitorImpl<T, NodeBase<T>>;
template <typename T>
using Inductor = detail::InductorImpl<T, NodeBase<T>>;
template <typename T>
using ResistiveVoltageSource = detail::ResistiveVoltageSourceImpl<T, NodeBase<T>>;
template <typename T>
using ResistiveCurrentSource = detail::ResistiveCurrentSourceImpl<T, NodeBase<T>>;
template <typename T, typename Child>
using IdealVoltageSource = detail::IdealVoltageSourceImpl<T, Child, NodeBase<T>>;
template <typename T, typename Child>
using IdealCurrentSource = detail::IdealCurrentSourceImpl<T, Child, NodeBase<T>>;

}  // namespace early

namespace late {

template <typename T>
using Resistor = detail::ResistorImpl<T, Node<T>>;
template <typename T>
using Capacitor = detail::CapacitorImpl<T, Node<T>>;
template <typename T>
using Inductor = detail::InductorImpl<T, Node<T>>;
template <typename T>
using ResistiveVoltageSource = detail::ResistiveVoltageSourceImpl<T, Node<T>>;
template <typename T>
using ResistiveCurrentSource = detail::ResistiveCurrentSourceImpl<T, Node<T>>;
template <typename T>
using IdealVoltageSource = detail::IdealVoltageSourceImpl<T, Node<T>, Node<T>>;
template <typename T>
using IdealCurrentSource = detail::IdealCurrentSourceImpl<T, Node<T>, Node<T>>;

}  // namespace late

}  // namespace wdf
