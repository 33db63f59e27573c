#pragma once

// Series, parallel and polarity-inverting adaptors.
//
// early:: adaptors carry their children's concrete types as template
// arguments, so reflected()/incident() resolve every child call statically.
// late:: adaptors hold children through late::Node<T> and may be rewired
// between samples; their member functions are compiled out of line in the
// wdf library.

#include <array>
#include <cstddef>
#include <tuple>
#include <vector>

#include "wdf/node.hpp"
#include "wdf/sample.hpp"
#include "wdf/scattering.hpp"

namespace wdf {

namespace detail {

/// Child's reflected wave as kernels::ZeroWave when its type guarantees 0.
template <typename C>
inline auto reflect(C& child) noexcept {
  if constexpr (ReflectsZero<C>) {
    child.reflected();
    return kernels::ZeroWave{};
  } else {
    return child.reflected();
  }
}

template <typename C>
inline auto last_reflected(const C& child) noexcept {
  if constexpr (ReflectsZero<C>)
    return kernels::ZeroWave{};
  else
    return child.port.b;
}

}  // namespace detail

namespace early {

/// Two-child series adaptor, upstream port adapted (R_up = R1 + R2).
template <typename T, typename C1, typename C2>
class Series : public NodeBase<T> {
 public:
  static constexpr bool kReflectsZero = detail::ReflectsZero<C1> && detail::ReflectsZero<C2>;

  Series(C1& child1, C2& child2) : c1_(&child1), c2_(&child2) {
    TreeNode* next[] = {c1_, c2_};
    TreeNode::rewire(*this, {}, next);
    Series::calc_impedance();
  }

  T reflection_coefficient() const noexcept { return p_; }

  inline T reflected() noexcept {
    const auto b1 = detail::reflect(*c1_);
    const auto b2 = detail::reflect(*c2_);
    this->port.b = kernels::as_wave<T>(kernels::series_reflect(b1, b2));
    return this->port.b;
  }

  inline void incident(T a) noexcept {
    const T to1 = kernels::as_wave<T>(
        kernels::series_to_child1(a, detail::last_reflected(*c1_), detail::last_reflected(*c2_), p_));
    c1_->incident(to1);
    c2_->incident(kernels::series_to_child2(a, to1));
    this->port.a = a;
  }

  bool is_prepared() const override {
    return c1_->is_prepared() && c2_->is_prepared();
  }

 protected:
  void calc_impedance() override {
    this->port.set_impedance(kernels::series_impedance(c1_->port.R, c2_->port.R));
    p_ = kernels::series_coefficient(c1_->port.R, this->port.R);
  }

 private:
  C1* c1_;
  C2* c2_;
  T p_{};
};

/// Two-child parallel adaptor, upstream port adapted (G_up = G1 + G2).
template <typename T, typename C1, typename C2>
class Parallel : public NodeBase<T> {
 public:
  static constexpr bool kReflectsZero = detail::ReflectsZero<C1> && detail::ReflectsZero<C2>;

  Parallel(C1& child1, C2& child2) : c1_(&child1), c2_(&child2) {
    TreeNode* next[] = {c1_, c2_};
    TreeNode::rewire(*this, {}, next);
    Parallel::calc_impedance();
  }

  T reflection_coefficient() const noexcept { return p_; }

  inline T reflected() noexcept {
    const auto b1 = detail::reflect(*c1_);
    const auto b2 = detail::reflect(*c2_);
    const auto diff = kernels::parallel_difference(b1, b2);
    diff_ = kernels::as_wave<T>(diff);
    this->port.b = kernels::as_wave<T>(kernels::parallel_reflect(b2, diff, p_));
    return this->port.b;
  }

  inline void incident(T a) noexcept {
    const T to2 = kernels::parallel_to_child2(a, this->port.b, detail::last_reflected(*c2_));
    c1_->incident(kernels::parallel_to_child1(to2, diff_));
    c2_->incident(to2);
    this->port.a = a;
  }

  bool is_prepared() const override {
    return c1_->is_prepared() && c2_->is_prepared();
  }

 protected:
  void calc_impedance() override {
    const T g = kernels::parallel_conductance(c1_->port.G, c2_->port.G);
    this->port.set_impedance(T(1) / g);
    p_ = kernels::parallel_coefficient(c1_->port.G, g);
  }

 private:
  C1* c1_;
  C2* c2_;
  T p_{};
  T diff_{};
};

/// Polarity inverter: b_up = -b_child, child receives -a_up.
template <typename T, typename C>
class Inverter : public NodeBase<T> {
 public:
  static constexpr bool kReflectsZero = detail::ReflectsZero<C>;

  explicit Inverter(C& child) : c_(&child) {
    TreeNode::attach(*this, child);
    Inverter::calc_impedance();
  }

  inline T reflected() noexcept {
    this->port.b = -c_->reflected();
    return this->port.b;
  }
  inline void incident(T a) noexcept {
    this->port.a = a;
    c_->incident(-a);
  }

  bool is_prepared() const override { return c_->is_prepared(); }

 protected:
  void calc_impedance() override { this->port.set_impedance(c_->port.R); }

 private:
  C* c_;
};

/// N-child series adaptor using the general scattering formula
/// b_k = a_k - (R_k / R_up) (a_up + sum_j a_j).
template <typename T, typename... Cs>
class SeriesN : public NodeBase<T> {
  static_assert(sizeof...(Cs) >= 1);

 public:
  static constexpr std::size_t child_count = sizeof...(Cs);

  explicit SeriesN(Cs&... children) : children_(&children...) {
    std::array<TreeNode*, child_count> next{&children...};
    TreeNode::rewire(*this, {}, next);
    SeriesN::calc_impedance();
  }

  inline T reflected() noexcept {
    T sum{};
    std::apply([&](auto*... c) { ((sum += c->reflected()), ...); }, children_);
    this->port.b = -sum;
    return this->port.b;
  }

  inline void incident(T a) noexcept {
    T total = a;
    std::apply([&](auto*... c) { ((total += c->port.b), ...); }, children_);
    std::size_t k = 0;
    std::apply([&](auto*... c) {
      ((c->incident(c->port.b - weight_[k++] * total)), ...);
    }, children_);
    this->port.a = a;
  }

  bool is_prepared() const override {
    return std::apply([](auto*... c) { return (c->is_prepared() && ...); }, children_);
  }

 protected:
  void calc_impedance() override {
    T r{};
    std::apply([&](auto*... c) { ((r += c->port.R), ...); }, children_);
    this->port.set_impedance(r);
    std::size_t k = 0;
    std::apply([&](auto*... c) { ((weight_[k++] = c->port.R / r), ...); }, children_);
  }

 private:
  std::tuple<Cs*...> children_;
  std::array<T, child_count> weight_{};
};

/// N-child parallel adaptor: b_up = sum_k (G_k / G_up) a_k and every child
/// receives a_up + b_up - a_k.
template <typename T, typename... Cs>
class ParallelN : public NodeBase<T> {
  static_assert(sizeof...(Cs) >= 1);

 public:
  static constexpr std::size_t child_count = sizeof...(Cs);

  explicit ParallelN(Cs&... children) : children_(&children...) {
    std::array<TreeNode*, child_count> next{&children...};
    TreeNode::rewire(*this, {}, next);
    ParallelN::calc_impedance();
  }

  inline T reflected() noexcept {
    T sum{};
    std::size_t k = 0;
    std::apply([&](auto*... c) { ((sum += weight_[k++] * c->reflected()), ...); },
               children_);
    this->port.b = sum;
    return this->port.b;
  }

  inline void incident(T a) noexcept {
    const T common = a + this->port.b;
    std::apply([&](auto*... c) { ((c->incident(common - c->port.b)), ...); }, children_);
    this->port.a = a;
  }

  bool is_prepared() const override {
    return std::apply([](auto*... c) { return (c->is_prepared() && ...); }, children_);
  }

 protected:
  void calc_impedance() override {
    T g{};
    std::apply([&](auto*... c) { ((g += c->port.G), ...); }, children_);
    this->port.set_impedance(T(1) / g);
    std::size_t k = 0;
    std::apply([&](auto*... c) { ((weight_[k++] = c->port.G / g), ...); }, children_);
  }

 private:
  std::tuple<Cs*...> children_;
  std::array<T, child_count> weight_{};
};

}  // namespace early

namespace late {

template <typename T>
class Series : public Node<T> {
 public:
  Series() = default;
  Series(Node<T>& child1, Node<T>& child2);

  void connect(Node<T>& child1, Node<T>& child2);
  void disconnect() noexcept;
  T reflection_coefficient() const noexcept { return p_; }

  T reflected() override;
  void incident(T a) override;
  bool is_prepared() const override;

 protected:
  void calc_impedance() override;

 private:
  Node<T>* c1_ = nullptr;
  Node<T>* c2_ = nullptr;
  T p_{};
};

template <typename T>
class Parallel : public Node<T> {
 public:
  Parallel() = default;
  Parallel(Node<T>& child1, Node<T>& child2);

  void connect(Node<T>& child1, Node<T>& child2);
  void disconnect() noexcept;
  T reflection_coefficient() const noexcept { return p_; }

  T reflected() override;
  void incident(T a) override;
  bool is_prepared() const override;

 protected:
  void calc_impedance() override;

 private:
  Node<T>* c1_ = nullptr;
  Node<T>* c2_ = nullptr;
  T p_{};
  T diff_{};
};

template <typename T>
class Inverter : public Node<T> {
 public:
  Inverter() = default;
  explicit Inverter(Node<T>& child);
  /// Nests an inverter under another one (otherwise the copy constructor
  /// would be selected).
  explicit Inverter(Inverter& child) : Inverter(static_cast<Node<T>&>(child)) {}

  void connect(Node<T>& child);
  void disconnect() noexcept;

  T reflected() override;
  void incident(T a) override;
  bool is_prepared() const override;

 protected:
  void calc_impedance() override;

 private:
  Node<T>* c_ = nullptr;
};

template <typename T>
class SeriesN : public Node<T> {
 public:
  SeriesN() = default;
  explicit SeriesN(std::vector<Node<T>*> children);

  void connect(std::vector<Node<T>*> children);
  std::size_t child_count() const noexcept { return children_.size(); }

  T reflected() override;
  void incident(T a) override;
  bool is_prepared() const override;

 protected:
  void calc_impedance() override;

 private:
  std::vector<Node<T>*> children_;
  std::vector<T> weight_;
};

template <typename T>
class ParallelN : public Node<T> {
 public:
  ParallelN() = default;
  explicit ParallelN(std::vector<Node<T>*> children);

  void connect(std::vector<Node<T>*> children);
  std::size_t child_count() const noexcept { return children_.size(); }

  T reflected() override;
  void incident(T a) override;
  bool is_prepared() const override;

 protected:
  void calc_impedance() override;

 private:
  std::vector<Node<T>*> children_;
  std::vector<T> weight_;
};

extern template class Series<float>;
extern template class Series<double>;
extern template class Series<Batch<float, 4>>;
extern template class Parallel<float>;
extern template class Parallel<double>;
extern template class Parallel<Batch<float, 4>>;
extern template class Inverter<float>;
extern template class Inverter<double>;
extern template class Inverter<Batch<float, 4>>;
extern template class SeriesN<float>;
extern template class SeriesN<double>;
extern template class ParallelN<float>;
extern template class ParallelN<double>;

}  // namespace late

}  // namespace wdf
