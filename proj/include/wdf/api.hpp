#pragma once

// Composition-style traits. A circuit written against `Api::Series<T, A, B>`
// and friends builds as an early-bound tree with EarlyApi and as a
// late-bound tree with LateApi, with identical arithmetic.

#include <string_view>
#include <utility>

#include "wdf/adaptors.hpp"
#include "wdf/diode.hpp"
#include "wdf/elements.hpp"
#include "wdf/rtype.hpp"

namespace wdf {

namespace late {

/// late::RootRtype with the early-bound constructor signature.
template <typename T, typename Calc, typename... Cs>
class RootRtypeOf : public RootRtype<T> {
 public:
  explicit RootRtypeOf(Cs&... children) : RootRtypeOf(Calc{}, children...) {}
  RootRtypeOf(Calc calc, Cs&... children)
      : RootRtype<T>({static_cast<Node<T>*>(&children)...},
                     typename RootRtype<T>::Calculator(std::move(calc))) {}
};

}  // namespace late

struct EarlyApi {
  static constexpr std::string_view name = "early";

  template <typename T> using Resistor = early::Resistor<T>;
  template <typename T> using Capacitor = early::Capacitor<T>;
  template <typename T> using Inductor = early::Inductor<T>;
  template <typename T> using ResistiveVoltageSource = early::ResistiveVoltageSource<T>;
  template <typename T> using ResistiveCurrentSource = early::ResistiveCurrentSource<T>;

  template <typename T, typename C1, typename C2> using Series = early::Series<T, C1, C2>;
  template <typename T, typename C1, typename C2> using Parallel = early::Parallel<T, C1, C2>;
  template <typename T, typename C> using Inverter = early::Inverter<T, C>;

  template <typename T, typename C> using IdealVoltageSource = early::IdealVoltageSource<T, C>;
  template <typename T, typename C> using IdealCurrentSource = early::IdealCurrentSource<T, C>;
  template <typename T, typename C> using DiodePair = early::DiodePair<T, C>;
  template <typename T, typename Calc, typename... Cs>
  using RootRtype = early::RootRtype<T, Calc, Cs...>;
};

struct LateApi {
  static constexpr std::string_view name = "late";

  template <typename T> using Resistor = late::Resistor<T>;
  template <typename T> using Capacitor = late::Capacitor<T>;
  template <typename T> using Inductor = late::Inductor<T>;
  template <typename T> using ResistiveVoltageSource = late::ResistiveVoltageSource<T>;
  template <typename T> using ResistiveCurrentSource = late::ResistiveCurrentSource<T>;

  template <typename T, typename, typename> using Series = late::Series<T>;
  template <typename T, typename, typename> using Parallel = late::Parallel<T>;
  template <typename T, typename> using Inverter = late::Inverter<T>;

  template <typename T, typename> using IdealVoltageSource = late::IdealVoltageSource<T>;
  template <typename T, typename> using IdealCurrentSource = late::IdealCurrentSource<T>;
  template <typename T, typename> using DiodePair = late::DiodePair<T>;
  template <typename T, typename Calc, typename... Cs>
  using RootRtype = late::RootRtypeOf<T, Calc, Cs...>;
};

}  // namespace wdf
