#include "wdf/circuits/registry.hpp"

#include <algorithm>
#include <string>

#include "wdf/circuits/diode_clipper.hpp"
#include "wdf/circuits/linear.hpp"
#include "wdf/circuits/tone_stack.hpp"
#include "wdf/circuits/voice_bank.hpp"

namespace wdf {

std::string_view to_string(ApiKind api) { return api == ApiKind::Early ? "early" : "late"; }

std::string_view to_string(SampleKind kind) {
  return kind == SampleKind::Scalar ? "scalar" : "batch-4";
}

namespace {

using circuits::CurrentDivider;
using circuits::DiodeClipper;
using circuits::Lpf2;
using circuits::RcLowpass;
using circuits::ToneStack;
using circuits::VoiceBank;
using circuits::VoltageDivider;

template <template <typename, typename> class Circuit>
std::unique_ptr<CircuitModel> make_scalar(ApiKind api) {
  if (api == ApiKind::Early)
    return std::make_unique<Model<Circuit<EarlyApi, double>>>(api, SampleKind::Scalar);
  return std::make_unique<Model<Circuit<LateApi, double>>>(api, SampleKind::Scalar);
}

std::unique_ptr<CircuitModel> make_voice_bank(ApiKind api, SampleKind kind) {
  using B = Batch<float, 4>;
  if (kind == SampleKind::Batch4) {
    if (api == ApiKind::Early) return std::make_unique<Model<VoiceBank<EarlyApi, B>>>(api, kind);
    return std::make_unique<Model<VoiceBank<LateApi, B>>>(api, kind);
  }
  if (api == ApiKind::Early) return std::make_unique<Model<VoiceBank<EarlyApi, float>>>(api, kind);
  return std::make_unique<Model<VoiceBank<LateApi, float>>>(api, kind);
}

const std::vector<CircuitInfo>& entries() {
  static const std::vector<CircuitInfo> table = [] {
    const std::vector<SampleKind> scalar{SampleKind::Scalar};
    std::vector<CircuitInfo> t{
        {VoltageDivider<EarlyApi, double>::name, "ideal source into two series resistors",
         VoltageDivider<EarlyApi, double>::params, scalar},
        {CurrentDivider<EarlyApi, double>::name, "ideal current source into two parallel resistors",
         CurrentDivider<EarlyApi, double>::params, scalar},
        {RcLowpass<EarlyApi, double>::name, "first-order RC lowpass",
         RcLowpass<EarlyApi, double>::params, scalar},
        {Lpf2<EarlyApi, double>::name, "second-order passive RC ladder lowpass",
         Lpf2<EarlyApi, double>::params, scalar},
        {DiodeClipper<EarlyApi, double>::name, "RC network clipped by an antiparallel diode pair",
         DiodeClipper<EarlyApi, double>::params, scalar},
        {ToneStack<EarlyApi, double>::name, "three-knob passive tone stack on an R-type junction",
         ToneStack<EarlyApi, double>::params, scalar},
        {VoiceBank<EarlyApi, float>::name, "four one-pole voices summed, one voice per lane",
         VoiceBank<EarlyApi, float>::params, {SampleKind::Scalar, SampleKind::Batch4}},
    };
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return t;
  }();
  return table;
}

}  // namespace

std::span<const CircuitInfo> circuit_registry() { return entries(); }

const CircuitInfo* find_circuit(std::string_view name) {
  for (const auto& info : entries())
    if (info.name == name) return &info;
  return nullptr;
}

std::unique_ptr<CircuitModel> make_circuit(std::string_view name, ApiKind api, SampleKind kind) {
  const CircuitInfo* info = find_circuit(name);
  if (info == nullptr) throw UnknownCircuitError("unknown circuit '" + std::string(name) + "'");
  if (std::find(info->sample_kinds.begin(), info->sample_kinds.end(), kind) ==
      info->sample_kinds.end())
    throw ParameterError("circuit " + std::string(name) + " does not support sample type " +
                         std::string(to_string(kind)));

  if (name == "poly_voice_bank") return make_voice_bank(api, kind);
  if (name == "voltage_divider") return make_scalar<VoltageDivider>(api);
  if (name == "current_divider") return make_scalar<CurrentDivider>(api);
  if (name == "rc_lowpass") return make_scalar<RcLowpass>(api);
  if (name == "lpf2") return make_scalar<Lpf2>(api);
  if (name == "diode_clipper") return make_scalar<DiodeClipper>(api);
  return make_scalar<ToneStack>(api);
}

}  // namespace wdf
