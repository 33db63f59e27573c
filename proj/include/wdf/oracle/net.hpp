#pragma once

// Reference circuit solver used to check the wave-domain models. Nothing here
// depends on the WDF tree code.

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wdf/diode_params.hpp"

namespace wdf::oracle {

enum class BranchKind { Resistor, Capacitor, Inductor, VoltageSource, CurrentSource, Diode, DiodePair };

/// Two-terminal branch from node `a` to node `b`; node 0 is ground.
///
/// Voltage sources hold V(a) - V(b) = value. Current sources push `value`
/// amps from a, through the source, into b. A diode's anode is `a`. With
/// `driven` set, a source's value is multiplied by the input sample.
struct Branch {
  BranchKind kind = BranchKind::Resistor;
  int a = 0;
  int b = 0;
  double value = 0.0;
  bool driven = false;
  DiodeParams diode{};
};

struct NetDescription {
  int node_count = 1;  // including ground
  std::vector<Branch> branches;

  /// Appends a branch, growing node_count to fit.
  NetDescription& add(BranchKind kind, int a, int b, double value, bool driven = false);
  NetDescription& add_diode(BranchKind kind, int a, int b, const DiodeParams& params = {});
};

/// Per-step solution. Row n holds step n; node voltages include ground as
/// column 0. Branch currents flow from a to b through the branch.
struct TransientResult {
  Eigen::MatrixXd node_voltage;
  Eigen::MatrixXd branch_current;
  double max_residual = 0.0;  // largest KCL mismatch, amps, over all steps
  int max_newton_iterations = 0;

  double branch_voltage(const NetDescription& net, int step, int branch) const;
  /// V(node) over all steps.
  std::vector<double> voltage(int node) const;
};

struct TransientOptions {
  double newton_tolerance = 1e-12;  // relative step size
  int max_newton_iterations = 100;
};

/// Trapezoidal transient analysis from a zero initial state, one step per
/// input sample. Throws SingularNetworkError naming a floating node and
/// ConvergenceError if Newton fails.
TransientResult mna_transient(const NetDescription& net, std::span<const double> input,
                              double sample_rate, const TransientOptions& options = {});

/// Line-oriented text form: `kind node_a node_b value`, with kinds R, C, L,
/// V, I, D, DP. `in` as the value marks a source driven by the input with unit
/// gain; diode lines take Is as the value plus optional `vt=` and `n=`.
/// Blank lines and `#` comments are ignored.
void write_net(std::ostream& out, const NetDescription& net);
NetDescription read_net(std::istream& in);

}  // namespace wdf::oracle
