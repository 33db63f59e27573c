#pragma once

// R-type junctions: adaptors whose scattering is a dense matrix, for
// topologies that do not decompose into series and parallel connections.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "wdf/errors.hpp"
#include "wdf/node.hpp"
#include "wdf/sample.hpp"

namespace wdf {

/// Width of the row blocks used by the lane-parallel scatter kernel. Matrix
/// storage is padded to a multiple of this so the kernel has no remainder.
inline constexpr int kMatrixLanes = 4;

constexpr int padded_port_count(int ports) {
  return (ports + kMatrixLanes - 1) / kMatrixLanes * kMatrixLanes;
}

/// Which scatter kernel ScatteringMatrix::apply uses.
enum class ScatterKernel { Plain, Lanes };

/// Dense N x N wave scattering matrix, row-major, padded with zeros.
///
/// Row 0 is the upstream port of an adapted junction. Besides the row-major
/// storage, a column-blocked copy feeds the lane-parallel kernel; both kernels
/// accumulate every row in ascending column order, so they agree exactly.
template <typename Scalar, int Ports = Eigen::Dynamic>
class ScatteringMatrix {
  static constexpr bool kDynamic = Ports == Eigen::Dynamic;
  static constexpr int kPadded = kDynamic ? Eigen::Dynamic : padded_port_count(Ports);

 public:
  using Storage = Eigen::Matrix<Scalar, kPadded, kPadded, Eigen::RowMajor>;
  using LaneBlock = Batch<Scalar, kMatrixLanes>;

  ScatteringMatrix() requires(!kDynamic) : ports_(Ports) {
    storage_.setZero();
    rebuild_blocks();
  }
  explicit ScatteringMatrix(int ports = 0) requires(kDynamic) { resize(ports); }

  void resize(int ports) requires(kDynamic) {
    ports_ = ports;
    const int padded = padded_port_count(ports);
    storage_.setZero(padded, padded);
    blocks_.assign(static_cast<std::size_t>(padded / kMatrixLanes) * ports, LaneBlock{});
  }

  int ports() const noexcept { return ports_; }
  int padded_ports() const noexcept { return static_cast<int>(storage_.rows()); }

  Scalar operator()(int row, int col) const noexcept { return storage_(row, col); }
  auto matrix() const { return storage_.topLeftCorner(ports_, ports_); }
  const Storage& padded_matrix() const noexcept { return storage_; }

  template <typename Derived>
  void assign(const Eigen::MatrixBase<Derived>& s) {
    if (s.rows() != ports_ || s.cols() != ports_)
      throw WiringError("scattering matrix is " + std::to_string(s.rows()) + "x" +
                        std::to_string(s.cols()) + " but the junction has " +
                        std::to_string(ports_) + " ports");
    storage_.topLeftCorner(ports_, ports_) = s.template cast<Scalar>();
    rebuild_blocks();
  }

  /// b[i] = sum_j S(i, j) a[j] for i < ports(). Works for any sample type.
  template <typename T>
  void apply(const T* a, T* b) const noexcept {
    for (int i = 0; i < ports_; ++i) b[i] = row_dot(i, a);
  }

  /// Same result as apply() on scalars, computed kMatrixLanes rows at a time.
  /// `a` and `b` must hold padded_ports() entries.
  void apply_lanes(const Scalar* a, Scalar* b) const noexcept {
    const int row_blocks = padded_ports() / kMatrixLanes;
    for (int rb = 0; rb < row_blocks; ++rb) {
      const LaneBlock* column = blocks_.data() + static_cast<std::size_t>(rb) * ports_;
      LaneBlock acc(Scalar(0));
      for (int j = 0; j < ports_; ++j) acc += column[j] * LaneBlock(a[j]);
      acc.store(b + rb * kMatrixLanes);
    }
  }

  template <typename T>
  T row_dot(int row, const T* a) const noexcept {
    T acc(Scalar(0));
    for (int j = 0; j < ports_; ++j) acc += T(storage_(row, j)) * a[j];
    return acc;
  }

  static constexpr std::size_t kMaskSize = kDynamic ? 0 : static_cast<std::size_t>(Ports);

  // Variants that leave out the columns flagged in `Zero`, whose incident
  // waves are known to be zero. Dropping a +-0 term can only change the sign
  // of a zero result.

  template <std::array<bool, kMaskSize> Zero>
    requires(!kDynamic)
  void apply_lanes_skipping(const Scalar* a, Scalar* b) const noexcept {
    for (int rb = 0; rb < kPadded / kMatrixLanes; ++rb) {
      const LaneBlock* column = blocks_.data() + static_cast<std::size_t>(rb) * Ports;
      LaneBlock acc(Scalar(0));
      for (int j = 0; j < Ports; ++j)
        if (!Zero[j]) acc += column[j] * LaneBlock(a[j]);
      acc.store(b + rb * kMatrixLanes);
    }
  }

  template <std::array<bool, kMaskSize> Zero, typename T>
    requires(!kDynamic)
  T row_dot_skipping(int row, const T* a) const noexcept {
    T acc(Scalar(0));
    for (int j = 0; j < Ports; ++j)
      if (!Zero[j]) acc += T(storage_(row, j)) * a[j];
    return acc;
  }

  template <std::array<bool, kMaskSize> Zero, typename T>
    requires(!kDynamic)
  void apply_skipping(const T* a, T* b) const noexcept {
    for (int i = 0; i < Ports; ++i) b[i] = row_dot_skipping<Zero>(i, a);
  }

 private:
  void rebuild_blocks() {
    const int row_blocks = padded_ports() / kMatrixLanes;
    for (int rb = 0; rb < row_blocks; ++rb)
      for (int j = 0; j < ports_; ++j) {
        LaneBlock block;
        for (int l = 0; l < kMatrixLanes; ++l) block.set(l, storage_(rb * kMatrixLanes + l, j));
        blocks_[static_cast<std::size_t>(rb) * ports_ + j] = block;
      }
  }

  using BlockStorage =
      std::conditional_t<kDynamic, std::vector<LaneBlock>,
                         std::array<LaneBlock, kDynamic ? 1 : (kPadded / kMatrixLanes) * Ports>>;

  int ports_ = 0;
  Storage storage_;
  BlockStorage blocks_{};
};

/// Dense mat-vec b = S a with the chosen kernel. Spans are at least
/// padded_ports() long for the lane kernel, ports() otherwise.
template <typename Scalar, int Ports>
void scatter(const ScatteringMatrix<Scalar, Ports>& s, std::span<const Scalar> a,
             std::span<Scalar> b, ScatterKernel kernel = ScatterKernel::Plain) {
  const auto need = static_cast<std::size_t>(kernel == ScatterKernel::Lanes ? s.padded_ports()
                                                                            : s.ports());
  if (a.size() < need || b.size() < need) throw WiringError("scatter: vector too short");
  if (kernel == ScatterKernel::Lanes)
    s.apply_lanes(a.data(), b.data());
  else
    s.apply(a.data(), b.data());
}

// ------------------------------------------------------------ synthesis

/// Port of a resistive junction between two of its nodes. Positive port
/// voltage is V(plus) - V(minus). Node 0 is the junction's datum.
struct JunctionPort {
  int plus = 0;
  int minus = 0;
};

/// Resistor internal to the junction (not a WDF port).
struct JunctionResistor {
  int a = 0;
  int b = 0;
  double resistance = 1.0;
};

struct ResistiveJunction {
  int node_count = 1;  // including the datum node 0
  std::vector<JunctionPort> ports;
  std::vector<JunctionResistor> resistors;
};

/// Scattering matrix of a linear resistive junction terminated by the given
/// port resistances. Column j drives port j with a unit incident wave (a
/// source of a_j volts behind R_j), solves the junction by nodal analysis and
/// reads b_k = 2 v_k - a_k. Throws SingularNetworkError naming a node with no
/// path to the datum.
Eigen::MatrixXd synthesize_scattering(const ResistiveJunction& junction,
                                      std::span<const double> port_resistance);

/// Resistance seen looking into `port` with every other port terminated by
/// its resistance. The upstream port of an adapted junction uses this value
/// to become reflection-free.
double port_thevenin_resistance(const ResistiveJunction& junction,
                                std::span<const double> port_resistance, int port);

/// Default R-type calculator: re-synthesizes S from a junction description
/// whenever a child impedance changes. For adapted junctions the
/// description's port 0 is the upstream port.
class JunctionCalculator {
 public:
  JunctionCalculator() = default;
  explicit JunctionCalculator(ResistiveJunction junction) : junction_(std::move(junction)) {}

  const ResistiveJunction& junction() const noexcept { return junction_; }

  template <typename RType>
  void operator()(RType& rtype) const {
    const auto children = rtype.port_impedances();
    std::vector<double> resistance;
    resistance.reserve(children.size() + 1);
    if constexpr (RType::is_adapted) resistance.push_back(0.0);
    for (const auto& r : children) resistance.push_back(uniform_lane(r));

    // A reactive child without a sample rate leaves the junction unset.
    for (std::size_t k = RType::is_adapted ? 1 : 0; k < resistance.size(); ++k)
      if (!std::isfinite(resistance[k])) {
        const auto n = static_cast<Eigen::Index>(resistance.size());
        if constexpr (RType::is_adapted)
          rtype.set_upstream_impedance(std::numeric_limits<double>::quiet_NaN());
        rtype.set_smatrix(Eigen::MatrixXd::Zero(n, n));
        return;
      }

    if constexpr (RType::is_adapted) {
      resistance[0] = port_thevenin_resistance(junction_, resistance, 0);
      rtype.set_upstream_impedance(resistance[0]);
    }
    rtype.set_smatrix(synthesize_scattering(junction_, resistance));
  }

 private:
  template <typename T>
  static double uniform_lane(const T& r) {
    const double first = static_cast<double>(lane(r, 0));
    if (std::isnan(first)) return first;
    if (!all_lanes(r, [first](auto v) { return static_cast<double>(v) == first; }))
      throw ParameterError("junction synthesis needs identical impedances in every lane");
    return first;
  }

  ResistiveJunction junction_;
};

namespace detail {

template <typename Calc, typename RType>
void invoke_calculator(Calc& calc, RType& rtype) {
  if constexpr (requires { Calc::calc_impedance(rtype); })
    Calc::calc_impedance(rtype);
  else
    calc(rtype);
}

template <typename Scalar, int Ports>
void require_reflection_free(const ScatteringMatrix<Scalar, Ports>& s) {
  if (std::abs(static_cast<double>(s(0, 0))) > 1e-9)
    throw WiringError("adapted R-type junction: S[0][0] = " +
                      std::to_string(static_cast<double>(s(0, 0))) +
                      " but the upstream port must be reflection-free");
}

}  // namespace detail

namespace early {

/// R-type junction at the root of the tree: every port is a child.
///
/// `Calc` recomputes the scattering matrix; it is either a callable taking
/// the junction or a type with a static calc_impedance(junction).
template <typename T, typename Calc, typename... Cs>
class RootRtype : public TreeNode {
  using Scalar = ScalarOf<T>;

 public:
  static constexpr int port_count = sizeof...(Cs);
  static constexpr bool is_adapted = false;

  explicit RootRtype(Cs&... children) : RootRtype(Calc{}, children...) {}
  RootRtype(Calc calc, Cs&... children) : children_(&children...), calc_(std::move(calc)) {
    std::array<TreeNode*, port_count> next{&children...};
    TreeNode::rewire(*this, {}, next);
    RootRtype::calc_impedance();
  }

  std::array<T, port_count> port_impedances() const {
    return std::apply([](auto*... c) { return std::array<T, port_count>{c->port.R...}; },
                      children_);
  }

  template <typename Derived>
  void set_smatrix(const Eigen::MatrixBase<Derived>& s) {
    smat_.assign(s);
  }
  const ScatteringMatrix<Scalar, port_count>& scattering() const noexcept { return smat_; }
  Calc& calculator() noexcept { return calc_; }

  /// One sample: gather child reflections, scatter, deliver.
  inline void compute() noexcept {
    std::size_t k = 0;
    std::apply([&](auto*... c) { ((a_[k++] = c->reflected()), ...); }, children_);
    if constexpr (std::is_same_v<T, Scalar>)
      smat_.template apply_lanes_skipping<kZeroColumns>(a_.data(), b_.data());
    else
      smat_.template apply_skipping<kZeroColumns>(a_.data(), b_.data());
    k = 0;
    std::apply([&](auto*... c) { ((c->incident(b_[k++])), ...); }, children_);
  }

  bool is_prepared() const override {
    return std::apply([](auto*... c) { return (c->is_prepared() && ...); }, children_);
  }

 protected:
  void calc_impedance() override { detail::invoke_calculator(calc_, *this); }

 private:
  static constexpr int kPadded = padded_port_count(port_count);
  static constexpr std::array<bool, port_count> kZeroColumns{detail::ReflectsZero<Cs>...};

  std::tuple<Cs*...> children_;
  Calc calc_;
  ScatteringMatrix<Scalar, port_count> smat_;
  std::array<T, kPadded> a_{};
  std::array<T, kPadded> b_{};
};

/// R-type junction with an adapted upstream port at index 0 of S.
template <typename T, typename Calc, typename... Cs>
class Rtype : public NodeBase<T> {
  using Scalar = ScalarOf<T>;

 public:
  static constexpr int child_count = sizeof...(Cs);
  static constexpr int port_count = child_count + 1;
  static constexpr bool is_adapted = true;

  explicit Rtype(Cs&... children) : Rtype(Calc{}, children...) {}
  Rtype(Calc calc, Cs&... children) : children_(&children...), calc_(std::move(calc)) {
    std::array<TreeNode*, child_count> next{&children...};
    TreeNode::rewire(*this, {}, next);
    Rtype::calc_impedance();
  }

  std::array<T, child_count> port_impedances() const {
    return std::apply([](auto*... c) { return std::array<T, child_count>{c->port.R...}; },
                      children_);
  }

  template <typename Derived>
  void set_smatrix(const Eigen::MatrixBase<Derived>& s) {
    smat_.assign(s);
  }
  void set_upstream_impedance(T r) { this->port.set_impedance(r); }
  const ScatteringMatrix<Scalar, port_count>& scattering() const noexcept { return smat_; }

  /// Upstream reflection with a_up taken as 0, valid because S[0][0] = 0.
  inline T reflected() noexcept {
    std::size_t k = 1;
    std::apply([&](auto*... c) { ((a_[k++] = c->reflected()), ...); }, children_);
    a_[0] = T(0);
    this->port.b = smat_.template row_dot_skipping<kReflectColumns>(0, a_.data());
    return this->port.b;
  }

  inline void incident(T a) noexcept {
    a_[0] = a;
    if constexpr (std::is_same_v<T, Scalar>)
      smat_.template apply_lanes_skipping<kZeroColumns>(a_.data(), b_.data());
    else
      smat_.template apply_skipping<kZeroColumns>(a_.data(), b_.data());
    std::size_t k = 1;
    std::apply([&](auto*... c) { ((c->incident(b_[k++])), ...); }, children_);
    this->port.a = a;
  }

  bool is_prepared() const override {
    return std::apply([](auto*... c) { return (c->is_prepared() && ...); }, children_);
  }

 protected:
  void calc_impedance() override {
    detail::invoke_calculator(calc_, *this);
    detail::require_reflection_free(smat_);
  }

 private:
  static constexpr int kPadded = padded_port_count(port_count);
  // Column 0 is the upstream port.
  static constexpr std::array<bool, port_count> kZeroColumns{false, detail::ReflectsZero<Cs>...};
  static constexpr std::array<bool, port_count> kReflectColumns{true, detail::ReflectsZero<Cs>...};

  std::tuple<Cs*...> children_;
  Calc calc_;
  ScatteringMatrix<Scalar, port_count> smat_;
  std::array<T, kPadded> a_{};
  std::array<T, kPadded> b_{};
};

}  // namespace early

namespace late {

template <typename T>
class RootRtype : public TreeNode {
 public:
  using Calculator = std::function<void(RootRtype&)>;
  static constexpr bool is_adapted = false;

  RootRtype() = default;
  RootRtype(std::vector<Node<T>*> children, Calculator calc);

  void connect(std::vector<Node<T>*> children, Calculator calc);
  int port_count() const noexcept { return static_cast<int>(children_.size()); }

  std::vector<T> port_impedances() const;
  void set_smatrix(const Eigen::Ref<const Eigen::MatrixXd>& s);
  const ScatteringMatrix<ScalarOf<T>>& scattering() const noexcept { return smat_; }

  void compute();
  bool is_prepared() const override;

 protected:
  void calc_impedance() override;

 private:
  std::vector<Node<T>*> children_;
  Calculator calc_;
  ScatteringMatrix<ScalarOf<T>> smat_;
  std::vector<T> a_;
  std::vector<T> b_;
};

template <typename T>
class Rtype : public Node<T> {
 public:
  using Calculator = std::function<void(Rtype&)>;
  static constexpr bool is_adapted = true;

  Rtype() = default;
  Rtype(std::vector<Node<T>*> children, Calculator calc);

  void connect(std::vector<Node<T>*> children, Calculator calc);
  int child_count() const noexcept { return static_cast<int>(children_.size()); }

  std::vector<T> port_impedances() const;
  void set_smatrix(const Eigen::Ref<const Eigen::MatrixXd>& s);
  void set_upstream_impedance(T r) { this->port.set_impedance(r); }
  const ScatteringMatrix<ScalarOf<T>>& scattering() const noexcept { return smat_; }

  T reflected() override;
  void incident(T a) override;
  bool is_prepared() const override;

 protected:
  void calc_impedance() override;

 private:
  std::vector<Node<T>*> children_;
  Calculator calc_;
  ScatteringMatrix<ScalarOf<T>> smat_;
  std::vector<T> a_;
  std::vector<T> b_;
};

extern template class RootRtype<float>;
extern template class RootRtype<double>;
extern template class Rtype<float>;
extern template class Rtype<double>;

}  // namespace late

}  // namespace wdf
