#pragma once

// Sample types carried on every wave port: plain floating point scalars or
// fixed-width batches whose lanes are independent circuits.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <type_traits>

namespace wdf {

/// Fixed-width batch of floating point lanes with elementwise arithmetic.
///
/// Backed by the compiler's vector extension so that each operator maps to a
/// single SIMD instruction where the target has one. Lanes never interact
/// except through the explicit reductions below.
template <std::floating_point T, int Lanes>
class Batch {
  static_assert(Lanes > 0 && (Lanes & (Lanes - 1)) == 0,
                "lane count must be a power of two");

 public:
  using value_type = T;
  static constexpr int lanes = Lanes;
  typedef T native_type __attribute__((vector_size(sizeof(T) * Lanes)));

  Batch() noexcept : v_{} {}
  Batch(T scalar) noexcept : v_(native_type{} + scalar) {}  // NOLINT: broadcast

  static Batch load(const T* p) noexcept {
    Batch out;
    for (int i = 0; i < Lanes; ++i) out.v_[i] = p[i];
    return out;
  }
  void store(T* p) const noexcept {
    for (int i = 0; i < Lanes; ++i) p[i] = v_[i];
  }

  T operator[](int i) const noexcept { return v_[i]; }
  void set(int i, T x) noexcept { v_[i] = x; }
  native_type native() const noexcept { return v_; }
  static Batch from_native(native_type v) noexcept {
    Batch out;
    out.v_ = v;
    return out;
  }

  Batch& operator+=(Batch o) noexcept { v_ += o.v_; return *this; }
  Batch& operator-=(Batch o) noexcept { v_ -= o.v_; return *this; }
  Batch& operator*=(Batch o) noexcept { v_ *= o.v_; return *this; }
  Batch& operator/=(Batch o) noexcept { v_ /= o.v_; return *this; }

  friend Batch operator+(Batch a, Batch b) noexcept { return from_native(a.v_ + b.v_); }
  friend Batch operator-(Batch a, Batch b) noexcept { return from_native(a.v_ - b.v_); }
  friend Batch operator*(Batch a, Batch b) noexcept { return from_native(a.v_ * b.v_); }
  friend Batch operator/(Batch a, Batch b) noexcept { return from_native(a.v_ / b.v_); }
  friend Batch operator-(Batch a) noexcept { return from_native(-a.v_); }

  friend bool operator==(Batch a, Batch b) noexcept {
    for (int i = 0; i < Lanes; ++i)
      if (a.v_[i] != b.v_[i]) return false;
    return true;
  }

 private:
  native_type v_;
};

template <typename T>
struct SampleTraits {
  using scalar_type = T;
  static constexpr int lanes = 1;
};

template <typename T, int L>
struct SampleTraits<Batch<T, L>> {
  using scalar_type = T;
  static constexpr int lanes = L;
};

template <typename T>
using ScalarOf = typename SampleTraits<T>::scalar_type;

template <typename T>
inline constexpr int lanes_of = SampleTraits<T>::lanes;

template <typename T>
inline constexpr bool is_batch_v = !std::is_floating_point_v<T>;

/// Floating point scalar or Batch.
template <typename T>
concept SampleType = std::floating_point<T> || requires {
  typename SampleTraits<T>::scalar_type;
  requires std::floating_point<typename SampleTraits<T>::scalar_type>;
  requires !std::is_same_v<T, typename SampleTraits<T>::scalar_type>;
};

template <typename T>
inline ScalarOf<T> lane(const T& x, int i) noexcept {
  if constexpr (std::floating_point<T>) {
    (void)i;
    return x;
  } else {
    return x[i];
  }
}

template <typename T>
inline void set_lane(T& x, int i, ScalarOf<T> v) noexcept {
  if constexpr (std::floating_point<T>) {
    (void)i;
    x = v;
  } else {
    x.set(i, v);
  }
}

/// Sum across lanes; identity for scalars.
template <typename T>
inline ScalarOf<T> reduce_add(const T& x) noexcept {
  if constexpr (std::floating_point<T>) {
    return x;
  } else {
    ScalarOf<T> acc = x[0];
    for (int i = 1; i < lanes_of<T>; ++i) acc += x[i];
    return acc;
  }
}

/// Applies a scalar function lane by lane.
template <typename T, typename Fn>
inline T map_lanes(const T& x, Fn&& fn) {
  if constexpr (std::floating_point<T>) {
    return fn(x);
  } else {
    T out;
    for (int i = 0; i < lanes_of<T>; ++i) out.set(i, fn(x[i]));
    return out;
  }
}

template <typename T, typename Pred>
inline bool all_lanes(const T& x, Pred&& pred) {
  for (int i = 0; i < lanes_of<T>; ++i)
    if (!pred(lane(x, i))) return false;
  return true;
}

template <typename T>
inline bool all_finite(const T& x) {
  return all_lanes(x, [](auto v) { return std::isfinite(v); });
}

}  // namespace wdf
