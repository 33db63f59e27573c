#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "wdf/circuits/model.hpp"

namespace wdf {

struct CircuitInfo {
  std::string_view name;
  std::string_view description;
  std::span<const ParamSpec> params;
  std::vector<SampleKind> sample_kinds;
};

/// Every shipped circuit, sorted by name.
std::span<const CircuitInfo> circuit_registry();

/// nullptr if no circuit has that name.
const CircuitInfo* find_circuit(std::string_view name);

/// Builds a circuit with default parameters. Throws UnknownCircuitError for
/// an unknown name and ParameterError for an unsupported sample kind.
std::unique_ptr<CircuitModel> make_circuit(std::string_view name, ApiKind api = ApiKind::Early,
                                           SampleKind kind = SampleKind::Scalar);

}  // namespace wdf
