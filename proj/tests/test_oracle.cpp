#include "catch_amalgamated.hpp"

#include <random>
#include <sstream>

#include "support.hpp"
#include "wdf/oracle/analytic.hpp"

using namespace wdf;
using namespace wdf::oracle;
using Catch::Approx;

namespace {

constexpr double kFs = 48000.0;

NetDescription random_linear_net(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nodes(3, 7);
  std::uniform_real_distribution<double> exponent(0.0, 1.0);
  const int n = nodes(rng);
  NetDescription net;
  net.add(BranchKind::VoltageSource, 1, 0, 1.0, true);
  // A resistor tree hangs every node off the source node, and one more
  // resistor closes the path to ground.
  for (int k = 2; k < n; ++k) {
    std::uniform_int_distribution<int> earlier(1, k - 1);
    net.add(BranchKind::Resistor, k, earlier(rng), std::pow(10.0, 2.0 + 3.0 * exponent(rng)));
  }
  net.add(BranchKind::Resistor, n - 1, 0, std::pow(10.0, 2.0 + 3.0 * exponent(rng)));
  std::uniform_int_distribution<int> node(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 3);
  for (int extra = 0; extra < n; ++extra) {
    const int a = node(rng), b = node(rng);
    if (a == b) continue;
    switch (kind(rng)) {
      case 0: net.add(BranchKind::Resistor, a, b, std::pow(10.0, 2.0 + 3.0 * exponent(rng))); break;
      case 1: net.add(BranchKind::Capacitor, a, b, std::pow(10.0, -9.0 + 3.0 * exponent(rng))); break;
      case 2: net.add(BranchKind::Inductor, a, b, std::pow(10.0, -3.0 + 2.0 * exponent(rng))); break;
      default: net.add(BranchKind::CurrentSource, a, b, 1e-3 * exponent(rng), true); break;
    }
  }
  return net;
}

}  // namespace

TEST_CASE("resistor divider solves to the divider ratio", "[oracle]") {
  const std::vector<double> input{1.0, -2.0, 0.5};
  const auto result = mna_transient(test::divider_net(1e3, 3e3), input, kFs);
  for (int n = 0; n < 3; ++n) CHECK(result.node_voltage(n, 2) == Approx(0.75 * input[std::size_t(n)]).epsilon(1e-14));
  CHECK(result.node_voltage(0, 0) == 0.0);
}

TEST_CASE("RC step response follows the trapezoidal recurrence", "[oracle]") {
  const double r = 1e3, c = 33e-9;
  const std::vector<double> input(2000, 1.0);
  const auto v = mna_transient(test::rc_net(r, c), input, kFs).voltage(2);
  const double k = 1.0 / (2.0 * kFs * r * c);
  double prev_v = 0.0, prev_u = 0.0, worst = 0.0;
  for (std::size_t n = 0; n < input.size(); ++n) {
    const double expected = ((1.0 - k) * prev_v + k * (input[n] + prev_u)) / (1.0 + k);
    worst = std::max(worst, std::abs(v[n] - expected));
    prev_v = expected;
    prev_u = input[n];
  }
  CHECK(worst <= 1e-10);
  CHECK(v.back() == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("energy balances on random linear nets", "[oracle][property]") {
  // With step-averaged voltages and currents the trapezoidal rule stores
  // exactly the averaged power, so sources = resistors + storage per step.
  std::mt19937_64 rng(31337);
  const double t = 1.0 / kFs;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = random_linear_net(rng);
    const auto input = test::uniform_noise(200, static_cast<std::uint64_t>(trial));
    const auto res = mna_transient(net, input, kFs);
    // Each step's mismatch is measured against the largest energy flow of
    // the run, since parts of a net the source cannot reach hold only
    // rounding noise.
    std::vector<double> mismatch;
    double peak = 0.0;
    for (int n = 1; n < static_cast<int>(input.size()); ++n) {
      double delivered = 0.0, dissipated = 0.0, stored = 0.0, flow = 0.0;
      for (int k = 0; k < static_cast<int>(net.branches.size()); ++k) {
        const auto& br = net.branches[static_cast<std::size_t>(k)];
        const double v1 = res.branch_voltage(net, n, k), v0 = res.branch_voltage(net, n - 1, k);
        const double i1 = res.branch_current(n, k), i0 = res.branch_current(n - 1, k);
        const double energy = t * 0.25 * (v1 + v0) * (i1 + i0);
        switch (br.kind) {
          case BranchKind::Resistor: dissipated += energy; break;
          case BranchKind::Capacitor: stored += 0.5 * br.value * (v1 * v1 - v0 * v0); break;
          case BranchKind::Inductor: stored += 0.5 * br.value * (i1 * i1 - i0 * i0); break;
          default: delivered -= energy; break;
        }
        flow += std::abs(energy);
      }
      mismatch.push_back(std::abs(delivered - dissipated - stored));
      peak = std::max(peak, flow);
    }
    for (double m : mismatch) worst = std::max(worst, m / peak);
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("solution satisfies the nodal equations", "[oracle]") {
  const auto input = test::sine(4800, 1000.0, kFs, 10.0);
  const auto res = mna_transient(test::diode_clipper_net(4.7e3, 47e-9), input, kFs);
  CHECK(res.max_residual <= 1e-10);
  CHECK(res.max_newton_iterations >= 2);
  CHECK(res.max_newton_iterations <= 100);

  TransientOptions starved;
  starved.max_newton_iterations = 1;
  CHECK_THROWS_AS(mna_transient(test::diode_clipper_net(4.7e3, 47e-9), input, kFs, starved), ConvergenceError);
}

TEST_CASE("floating nodes are reported", "[oracle]") {
  NetDescription net = test::divider_net(1e3, 1e3);
  net.add(BranchKind::Resistor, 3, 4, 1e3);
  const std::vector<double> input{1.0};
  try {
    mna_transient(net, input, kFs);
    FAIL("expected SingularNetworkError");
  } catch (const SingularNetworkError& e) {
    CHECK((e.node() == 3 || e.node() == 4));
  }
  CHECK_THROWS_AS(mna_transient(test::divider_net(1e3, 1e3), input, 0.0), ParameterError);
}

TEST_CASE("transient analysis is deterministic", "[oracle]") {
  const auto input = test::uniform_noise(4800, 3, 5.0);
  const auto a = mna_transient(test::diode_clipper_net(4.7e3, 47e-9), input, kFs);
  const auto b = mna_transient(test::diode_clipper_net(4.7e3, 47e-9), input, kFs);
  CHECK(a.node_voltage == b.node_voltage);
  CHECK(a.branch_current == b.branch_current);
}

TEST_CASE("net text round trip", "[oracle][io]") {
  NetDescription net = test::tone_stack_net(0.3, 0.6, 0.9);
  DiodeParams d;
  d.saturation_current = 1e-14;
  d.ideality = 1.7;
  net.add_diode(BranchKind::Diode, 6, 0, d);
  net.add(BranchKind::VoltageSource, 8, 0, 0.25, true);
  net.add(BranchKind::Inductor, 8, 2, 0.1);

  std::stringstream text;
  write_net(text, net);
  const NetDescription back = read_net(text);
  REQUIRE(back.branches.size() == net.branches.size());
  CHECK(back.node_count == net.node_count);
  for (std::size_t k = 0; k < net.branches.size(); ++k) {
    const auto& x = net.branches[k];
    const auto& y = back.branches[k];
    CHECK(x.kind == y.kind);
    CHECK(x.a == y.a);
    CHECK(x.b == y.b);
    CHECK(x.driven == y.driven);
    CHECK(x.value == y.value);
    if (x.kind == BranchKind::Diode || x.kind == BranchKind::DiodePair) {
      CHECK(x.diode.saturation_current == y.diode.saturation_current);
      CHECK(x.diode.thermal_voltage == y.diode.thermal_voltage);
      CHECK(x.diode.ideality == y.diode.ideality);
    }
  }

  std::istringstream comments("# divider\n\nV 1 0 in\nR 1 2 1000  # top\nR 2 0 1000\n");
  const auto parsed = read_net(comments);
  CHECK(parsed.branches.size() == 3);
  CHECK(parsed.node_count == 3);

  std::istringstream bad_kind("Q 1 0 5\n");
  CHECK_THROWS_AS(read_net(bad_kind), ParameterError);
  std::istringstream bad_value("R 1 0 abc\n");
  CHECK_THROWS_AS(read_net(bad_value), ParameterError);
  std::istringstream short_line("R 1 0\n");
  CHECK_THROWS_AS(read_net(short_line), ParameterError);
}

TEST_CASE("analytic families", "[oracle][analytic]") {
  const double divider[] = {1e3, 3e3};
  const double freqs[] = {0.0, 100.0, 10000.0};
  for (const auto& h : analytic_response(AnalyticFamily::Divider, divider, freqs, kFs))
    CHECK(std::abs(h - 0.75) <= 1e-15);

  const double lpf2[] = {1e3, 33e-9, 2.2e3, 10e-9};
  CHECK(std::abs(analytic_response(AnalyticFamily::Lpf2, lpf2, freqs, kFs)[0] - 1.0) <= 1e-15);
  // Second order: -40 dB/decade far above both corners.
  const auto hi = analog_transfer(AnalyticFamily::Lpf2, lpf2, {0.0, 2 * std::numbers::pi * 1e7});
  const auto hi10 = analog_transfer(AnalyticFamily::Lpf2, lpf2, {0.0, 2 * std::numbers::pi * 1e8});
  CHECK(20 * std::log10(std::abs(hi) / std::abs(hi10)) == Approx(40.0).margin(0.01));

  const double nyquist[] = {kFs / 2};
  CHECK_THROWS_AS(analytic_response(AnalyticFamily::Lpf2, lpf2, nyquist, kFs), ParameterError);
}
