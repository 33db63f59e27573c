#pragma once

#include "wdf/sample.hpp"

namespace wdf {

/// Voltage-wave port state: a = v + R*i, b = v - R*i with i flowing into
/// the element that owns the port.
template <typename T>
struct WavePort {
  T a{};      // incident
  T b{};      // reflected
  T R{1};     // port resistance (ohms)
  T G{1};     // port conductance, 1 / R

  void set_impedance(T r) noexcept {
    R = r;
    G = T(1) / r;
  }
};

/// Port voltage (a + b) / 2.
template <typename T, typename Node>
inline T voltage(const Node& node) noexcept {
  return (node.port.a + node.port.b) * ScalarOf<T>(0.5);
}

/// Port current (a - b) / (2 R), positive into the element.
template <typename T, typename Node>
inline T current(const Node& node) noexcept {
  return (node.port.a - node.port.b) / (ScalarOf<T>(2) * node.port.R);
}

}  // namespace wdf
