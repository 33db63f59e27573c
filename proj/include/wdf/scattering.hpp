#pragma once

// Scattering arithmetic for two-child series/parallel junctions, shared by the
// early- and late-bound adaptors so both APIs evaluate the same expressions in
// the same order.

#include <type_traits>

#include "wdf/sample.hpp"

namespace wdf::kernels {

/// A reflected wave known at compile time to be zero (a matched resistor).
/// Terms involving it fold away exactly, except for the sign of a zero
/// result, so an adaptor that knows its child's type skips that arithmetic.
struct ZeroWave {};

inline ZeroWave operator-(ZeroWave) noexcept { return {}; }
inline ZeroWave operator+(ZeroWave, ZeroWave) noexcept { return {}; }
inline ZeroWave operator-(ZeroWave, ZeroWave) noexcept { return {}; }
template <typename T> inline T operator+(ZeroWave, T x) noexcept { return x; }
template <typename T> inline T operator+(T x, ZeroWave) noexcept { return x; }
template <typename T> inline T operator-(T x, ZeroWave) noexcept { return x; }
template <typename T> inline T operator-(ZeroWave, T x) noexcept { return -x; }
template <typename T> inline ZeroWave operator*(T, ZeroWave) noexcept { return {}; }

template <typename T, typename W>
inline T as_wave(W w) noexcept {
  if constexpr (std::is_same_v<W, ZeroWave>)
    return T(0);
  else
    return w;
}

// Series junction, upstream port adapted: R_up = R1 + R2, p = R1 / R_up.

template <typename T>
inline T series_impedance(T r1, T r2) noexcept {
  return r1 + r2;
}

template <typename T>
inline T series_coefficient(T r1, T r_up) noexcept {
  return r1 / r_up;
}

template <typename B1, typename B2>
inline auto series_reflect(B1 b1, B2 b2) noexcept {
  return -(b1 + b2);
}

/// Wave sent to child 1: b1 - p (a_up + b1 + b2).
template <typename T, typename B1, typename B2>
inline auto series_to_child1(T a_up, B1 b1, B2 b2, T p) noexcept {
  return b1 - p * (a_up + b1 + b2);
}

/// Wave sent to child 2 given what child 1 received.
template <typename T>
inline T series_to_child2(T a_up, T to_child1) noexcept {
  return -(a_up + to_child1);
}

// Parallel junction, upstream port adapted: G_up = G1 + G2, p = G1 / G_up.

template <typename T>
inline T parallel_conductance(T g1, T g2) noexcept {
  return g1 + g2;
}

template <typename T>
inline T parallel_coefficient(T g1, T g_up) noexcept {
  return g1 / g_up;
}

/// Returns b2 - b1; the reflected wave is b2 - p (b2 - b1).
template <typename B1, typename B2>
inline auto parallel_difference(B1 b1, B2 b2) noexcept {
  return b2 - b1;
}

template <typename B2, typename D, typename T>
inline auto parallel_reflect(B2 b2, D diff, T p) noexcept {
  return b2 - p * diff;
}

/// Wave sent to child 2: a_up + b_up - b2. Child 1 receives this plus diff.
template <typename T, typename B2>
inline T parallel_to_child2(T a_up, T b_up, B2 b2) noexcept {
  return a_up + b_up - b2;
}

template <typename T>
inline T parallel_to_child1(T to_child2, T diff) noexcept {
  return to_child2 + diff;
}

}  // namespace wdf::kernels
