#pragma once

// Runtime interface over a compiled circuit: named parameters with ranges,
// prepare/reset, and per-sample or per-block processing.

#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wdf/errors.hpp"
#include "wdf/tree.hpp"

namespace wdf {

struct ParamSpec {
  std::string_view name;
  double min;
  double max;
  double default_value;
  std::string_view unit;
};

enum class ApiKind { Early, Late };
enum class SampleKind { Scalar, Batch4 };

std::string_view to_string(ApiKind api);
std::string_view to_string(SampleKind kind);

class CircuitModel {
 public:
  virtual ~CircuitModel() = default;

  virtual std::string_view name() const = 0;
  virtual std::span<const ParamSpec> params() const = 0;
  virtual ApiKind api() const = 0;
  virtual SampleKind sample_kind() const = 0;

  /// Sets the sample rate, re-derives every impedance and clears all state.
  void prepare(double sample_rate) {
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
      throw ParameterError("sample rate must be positive and finite");
    do_prepare(sample_rate);
    do_reset();
    sample_rate_ = sample_rate;
  }
  void reset() { do_reset(); }
  bool prepared() const noexcept { return sample_rate_ > 0.0; }
  double sample_rate() const noexcept { return sample_rate_; }

  /// Range-checked; throws ParameterError naming the parameter and range.
  void set_param(std::string_view name, double value) {
    const int index = checked_index(name, value);
    apply_param(index, value);
    values_.at(static_cast<std::size_t>(index)) = value;
  }

  /// Applies several changes inside one deferred update.
  void set_params(std::span<const std::pair<std::string, double>> changes) {
    for (const auto& [name, value] : changes) checked_index(name, value);
    apply_deferred([&] {
      for (const auto& [name, value] : changes) set_param(name, value);
    });
  }

  double param(std::string_view name) const {
    return values_.at(static_cast<std::size_t>(index_of(name)));
  }

  double process_sample(double x) {
    require_ready();
    return tick(x);
  }

  void process_block(std::span<const double> in, std::span<double> out) {
    require_ready();
    if (out.size() < in.size()) throw ParameterError("output block shorter than input block");
    run_block(in.data(), out.data(), in.size());
  }

  /// Root of the (first) connection tree; exposes recompute_count().
  virtual const TreeNode& root() const = 0;

 protected:
  void init_values() {
    values_.clear();
    for (const auto& p : params()) values_.push_back(p.default_value);
  }

  virtual void do_prepare(double sample_rate) = 0;
  virtual void do_reset() = 0;
  virtual void apply_param(int index, double value) = 0;
  virtual void apply_deferred(const std::function<void()>& fn) = 0;
  virtual double tick(double x) = 0;
  virtual void run_block(const double* in, double* out, std::size_t n) = 0;

 private:
  int index_of(std::string_view name) const {
    const auto specs = params();
    for (std::size_t i = 0; i < specs.size(); ++i)
      if (specs[i].name == name) return static_cast<int>(i);
    throw ParameterError("unknown parameter '" + std::string(name) + "' for circuit " +
                         std::string(this->name()));
  }

  int checked_index(std::string_view name, double value) const {
    const int index = index_of(name);
    const ParamSpec& spec = params()[static_cast<std::size_t>(index)];
    if (!(value >= spec.min && value <= spec.max))
      throw ParameterError("parameter '" + std::string(name) + "' = " + std::to_string(value) +
                           " is outside [" + std::to_string(spec.min) + ", " +
                           std::to_string(spec.max) + "]");
    return index;
  }

  void require_ready() const {
    if (!prepared())
      throw UnpreparedError(std::string(name()) + ": prepare() must be called before processing");
  }

  std::vector<double> values_;
  double sample_rate_ = 0.0;
};

/// Wraps a circuit class. `Circuit` provides name, params, prepare(fs),
/// reset(), set_param(index, value), process(double), root() and
/// update(fn) for deferred changes.
template <typename Circuit>
class Model final : public CircuitModel {
 public:
  template <typename... Args>
  explicit Model(ApiKind api, SampleKind kind, Args&&... args)
      : circuit_(std::forward<Args>(args)...), api_(api), kind_(kind) {
    init_values();
  }

  std::string_view name() const override { return Circuit::name; }
  std::span<const ParamSpec> params() const override { return Circuit::params; }
  ApiKind api() const override { return api_; }
  SampleKind sample_kind() const override { return kind_; }
  const TreeNode& root() const override { return circuit_.root(); }

  Circuit& circuit() noexcept { return circuit_; }

 protected:
  void do_prepare(double fs) override { circuit_.prepare(fs); }
  void do_reset() override { circuit_.reset(); }
  void apply_param(int index, double value) override { circuit_.set_param(index, value); }
  void apply_deferred(const std::function<void()>& fn) override { circuit_.update(fn); }
  double tick(double x) override { return circuit_.process(x); }
  void run_block(const double* __restrict in, double* __restrict out, std::size_t n) override {
    for (std::size_t i = 0; i < n; ++i) out[i] = circuit_.process(in[i]);
  }

 private:
  Circuit circuit_;
  ApiKind api_;
  SampleKind kind_;
};

}  // namespace wdf
