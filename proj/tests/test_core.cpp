#include "catch_amalgamated.hpp"

#include <random>

#include "support.hpp"
#include "wdf/api.hpp"
#include "wdf/circuits/linear.hpp"
#include "wdf/circuits/registry.hpp"
#include "wdf/oracle/net.hpp"

using namespace wdf;
using Catch::Approx;

namespace {

struct Probe {
  WavePort<double> port;
};

Probe probe(double a, double b, double r = 1.0) {
  Probe p;
  p.port.a = a;
  p.port.b = b;
  p.port.set_impedance(r);
  return p;
}

}  // namespace

TEST_CASE("port voltage is the mean of the two waves", "[core]") {
  CHECK(voltage<double>(probe(0, 0)) == 0.0);
  CHECK(voltage<double>(probe(2, 0)) == 1.0);
  CHECK(voltage<double>(probe(-1, -1)) == -1.0);
}

TEST_CASE("port current is the wave difference over twice the impedance", "[core]") {
  CHECK(current<double>(probe(0, 0, 1000)) == 0.0);
  CHECK(current<double>(probe(2, 0, 1000)) == Approx(1e-3).epsilon(1e-15));
  CHECK(current<double>(probe(1, -1, 500)) == Approx(2e-3).epsilon(1e-15));
}

TEST_CASE("port conductance is the reciprocal of the impedance", "[core]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> exponent(-3.0, 7.0);
  WavePort<double> port;
  for (int i = 0; i < 1000; ++i) {
    port.set_impedance(std::pow(10.0, exponent(rng)));
    CHECK(std::abs(port.G * port.R - 1.0) <= 1e-12);
  }
}

TEST_CASE("resistor is a matched termination", "[core][resistor]") {
  early::Resistor<double> r(1000.0);
  CHECK(r.port.R == 1000.0);
  for (double a : {-3.0, 0.0, 0.7, 12.5}) {
    r.incident(a);
    CHECK(r.reflected() == 0.0);
  }
  r.incident(0.7);
  CHECK(voltage<double>(r) == Approx(0.35));

  r.set_resistance(2000.0);
  CHECK(r.port.R == 2000.0);

  CHECK_THROWS_AS(r.set_resistance(0.0), ParameterError);
  CHECK_THROWS_AS(r.set_resistance(-5.0), ParameterError);
  CHECK_THROWS_AS(early::Resistor<double>(-1.0), ParameterError);
}

TEST_CASE("capacitor is a unit delay behind 1/(2 fs C)", "[core][capacitor]") {
  early::Capacitor<double> c(1e-6);
  CHECK_FALSE(c.is_prepared());
  CHECK(std::isnan(c.port.R));

  c.prepare(48000.0);
  CHECK(c.is_prepared());
  CHECK(c.port.R == Approx(10.416666666666666).epsilon(1e-15));

  c.reset();
  CHECK(c.reflected() == 0.0);
  c.incident(0.5);
  CHECK(c.reflected() == 0.5);

  CHECK_THROWS_AS(c.set_capacitance(0.0), ParameterError);
  CHECK_THROWS_AS(c.prepare(0.0), ParameterError);
  CHECK_THROWS_AS(c.prepare(-48000.0), ParameterError);
}

TEST_CASE("inductor is a negated unit delay behind 2 fs L", "[core][inductor]") {
  early::Inductor<double> l(1e-3);
  l.prepare(48000.0);
  CHECK(l.port.R == Approx(96.0).epsilon(1e-15));
  l.reset();
  CHECK(l.reflected() == 0.0);
  l.incident(0.25);
  CHECK(l.reflected() == -0.25);
  CHECK_THROWS_AS(l.set_inductance(-1.0), ParameterError);
}

TEST_CASE("resistive voltage source reflects its voltage", "[core][sources]") {
  early::ResistiveVoltageSource<double> vs(100.0);
  CHECK(vs.reflected() == 0.0);
  vs.set_voltage(1.5);
  for (double a : {-2.0, 0.0, 3.0}) {
    vs.incident(a);
    CHECK(vs.reflected() == 1.5);
    CHECK(voltage<double>(vs) == Approx((a + 1.5) / 2));
  }
}

TEST_CASE("resistive voltage source into a matched load delivers half its voltage",
          "[core][sources][oracle]") {
  const double rs = 470.0;
  const double vs_value = 1.5;

  // Open-circuit root above the parallel pair: the pair's port voltage is
  // the voltage across the load.
  early::ResistiveVoltageSource<double> vs(rs);
  early::Resistor<double> load(rs);
  early::Parallel<double, decltype(vs), decltype(load)> p(vs, load);
  early::IdealCurrentSource<double, decltype(p)> open(p);
  vs.set_voltage(vs_value);
  circuits::step(open, p);

  oracle::NetDescription net;
  net.add(oracle::BranchKind::VoltageSource, 1, 0, vs_value);
  net.add(oracle::BranchKind::Resistor, 1, 2, rs);
  net.add(oracle::BranchKind::Resistor, 2, 0, rs);
  const std::vector<double> input{1.0};
  const auto ref = oracle::mna_transient(net, input, 48000.0);

  CHECK(voltage<double>(load) == Approx(ref.node_voltage(0, 2)).epsilon(1e-12));
  CHECK(voltage<double>(load) == Approx(vs_value / 2).epsilon(1e-12));
}

TEST_CASE("resistive current source reflects R Is", "[core][sources]") {
  early::ResistiveCurrentSource<double> is(1000.0);
  CHECK(is.reflected() == 0.0);
  is.set_current(1e-3);
  CHECK(is.reflected() == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ideal voltage source holds its port voltage", "[core][sources]") {
  early::Resistor<double> r(1000.0);
  early::IdealVoltageSource<double, decltype(r)> v(r);

  const double x = 0.3;
  v.incident(x);
  CHECK(v.reflected() == -x);

  v.set_voltage(1.0);
  v.incident(0.0);
  CHECK(v.reflected() == 2.0);
  CHECK(voltage<double>(v) == 1.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double vs = dist(rng);
    v.set_voltage(vs);
    v.incident(dist(rng));
    v.reflected();
    CHECK(voltage<double>(v) == Approx(vs).epsilon(1e-14).margin(1e-14));
  }
}

TEST_CASE("ideal current source drives its current", "[core][sources]") {
  early::Resistor<double> r(1000.0);
  early::IdealCurrentSource<double, decltype(r)> i(r);

  i.incident(0.4);
  CHECK(i.reflected() == 0.4);

  i.set_current(1e-3);
  i.incident(0.0);
  CHECK(i.reflected() == 2.0);
  CHECK(std::abs(current<double>(i)) == Approx(1e-3).epsilon(1e-14));
}

TEST_CASE("element waves satisfy each constitutive law", "[core][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> wave(-10.0, 10.0);
  std::uniform_real_distribution<double> exponent(0.0, 6.0);
  auto rel = [](double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); };

  for (int n = 0; n < 1000; ++n) {
    const double rv = std::pow(10.0, exponent(rng));
    const double a = wave(rng);

    early::Resistor<double> r(rv);
    r.incident(a);
    r.reflected();
    CHECK(rel(voltage<double>(r), rv * current<double>(r)) <= 1e-12);

    early::ResistiveVoltageSource<double> vs(rv);
    const double vsv = wave(rng);
    vs.set_voltage(vsv);
    vs.incident(a);
    vs.reflected();
    CHECK(std::abs(voltage<double>(vs) - (vsv + rv * current<double>(vs))) <=
          1e-12 * (std::abs(a) + std::abs(vsv)));

    early::ResistiveCurrentSource<double> is(rv);
    const double isv = wave(rng) / rv;
    is.set_current(isv);
    is.incident(a);
    is.reflected();
    // Current into the element is v / R minus the source current.
    CHECK(std::abs(current<double>(is) - (voltage<double>(is) / rv - isv)) <=
          1e-12 * (std::abs(a) + std::abs(isv * rv)) / rv);
  }
}

TEST_CASE("reactive elements follow the trapezoidal rule", "[core][property]") {
  const double fs = 48000.0;
  const double cap = 2.2e-6;
  const double ind = 4.7e-3;
  early::Capacitor<double> c(cap);
  early::Inductor<double> l(ind);
  c.prepare(fs);
  l.prepare(fs);

  const auto waves = test::uniform_noise(2000, 5);
  double v_prev = 0.0, i_prev = 0.0, lv_prev = 0.0, li_prev = 0.0;
  for (std::size_t n = 0; n < waves.size(); ++n) {
    c.reflected();
    c.incident(waves[n]);
    l.reflected();
    l.incident(waves[n]);
    const double v = voltage<double>(c), i = current<double>(c);
    const double lv = voltage<double>(l), li = current<double>(l);
    if (n > 0) {
      // C: i[n] + i[n-1] = 2 fs C (v[n] - v[n-1]).
      CHECK(i + i_prev == Approx(2 * fs * cap * (v - v_prev)).epsilon(1e-9).margin(1e-12));
      // L: v[n] + v[n-1] = 2 fs L (i[n] - i[n-1]).
      CHECK(lv + lv_prev == Approx(2 * fs * ind * (li - li_prev)).epsilon(1e-9).margin(1e-12));
    }
    v_prev = v;
    i_prev = i;
    lv_prev = lv;
    li_prev = li;
  }
}

TEMPLATE_TEST_CASE("batch lanes match independent scalar runs", "[core][batch]", float, double) {
  using B = Batch<TestType, 4>;
  const TestType resistances[4] = {100, 220, 470, 1000};
  const TestType caps[4] = {1e-9f, 4.7e-9f, 22e-9f, 100e-9f};

  B r_batch, c_batch;
  for (int i = 0; i < 4; ++i) {
    r_batch.set(i, resistances[i]);
    c_batch.set(i, caps[i]);
  }

  using BR = early::Resistor<B>;
  using BC = early::Capacitor<B>;
  BR rb(r_batch);
  BC cb(c_batch);
  early::Series<B, BR, BC> sb(rb, cb);
  early::Inverter<B, decltype(sb)> ib(sb);
  early::IdealVoltageSource<B, decltype(ib)> vb(ib);
  cb.prepare(44100.0);

  struct Scalar {
    early::Resistor<TestType> r;
    early::Capacitor<TestType> c;
    early::Series<TestType, early::Resistor<TestType>, early::Capacitor<TestType>> s;
    early::Inverter<TestType, decltype(s)> inv;
    early::IdealVoltageSource<TestType, decltype(inv)> v;
    Scalar(TestType rv, TestType cv) : r(rv), c(cv), s(r, c), inv(s), v(inv) { c.prepare(44100.0); }
  };
  std::vector<std::unique_ptr<Scalar>> lanes;
  for (int i = 0; i < 4; ++i) lanes.push_back(std::make_unique<Scalar>(resistances[i], caps[i]));

  const auto input = test::uniform_noise(4 * 1000, 17);
  std::int64_t worst = 0;
  for (std::size_t n = 0; n < 1000; ++n) {
    B x;
    for (int i = 0; i < 4; ++i) x.set(i, static_cast<TestType>(input[4 * n + i]));
    vb.set_voltage(x);
    circuits::step(vb, ib);
    const B out = voltage<B>(cb);
    for (int i = 0; i < 4; ++i) {
      auto& s = *lanes[static_cast<std::size_t>(i)];
      s.v.set_voltage(x[i]);
      circuits::step(s.v, s.inv);
      worst = std::max(worst, test::ulp_distance(out[i], voltage<TestType>(s.c)));
    }
  }
  CHECK(worst <= 4);
}

TEST_CASE("batch arithmetic is elementwise", "[core][batch]") {
  using B = Batch<double, 4>;
  const B x = B::load(std::array<double, 4>{1, 2, 3, 4}.data());
  const B y = B::load(std::array<double, 4>{-1, 0.5, 2, 8}.data());
  const B sum = x + y, diff = x - y, prod = x * y, quot = x / y, neg = -x;
  for (int i = 0; i < 4; ++i) {
    CHECK(sum[i] == x[i] + y[i]);
    CHECK(diff[i] == x[i] - y[i]);
    CHECK(prod[i] == x[i] * y[i]);
    CHECK(quot[i] == x[i] / y[i]);
    CHECK(neg[i] == -x[i]);
  }
  CHECK(reduce_add(x) == 10.0);
  CHECK(B(2.5) == B::load(std::array<double, 4>{2.5, 2.5, 2.5, 2.5}.data()));
}

TEST_CASE("re-preparing leaves no trace of the previous sample rate", "[core][prepare]") {
  const auto input = test::uniform_noise(4800, 21);
  for (const char* name : {"rc_lowpass", "lpf2", "bassman_tone_stack", "diode_clipper"}) {
    for (ApiKind api : {ApiKind::Early, ApiKind::Late}) {
      INFO(name << " " << to_string(api));
      auto twice = make_circuit(name, api);
      twice->prepare(44100.0);
      test::run(*twice, input);
      twice->prepare(48000.0);

      auto fresh = make_circuit(name, api);
      fresh->prepare(48000.0);

      CHECK(test::run(*twice, input) == test::run(*fresh, input));
    }
  }
}

TEST_CASE("processing before prepare is reported", "[core][prepare]") {
  auto model = make_circuit("rc_lowpass");
  CHECK_FALSE(model->prepared());
  CHECK_THROWS_AS(model->process_sample(1.0), UnpreparedError);
  std::vector<double> in(8, 1.0), out(8);
  CHECK_THROWS_AS(model->process_block(in, out), UnpreparedError);

  early::Capacitor<double> c(1e-6);
  early::Resistor<double> r(1e3);
  early::Series<double, decltype(r), decltype(c)> s(r, c);
  CHECK_THROWS_AS(require_prepared(s), UnpreparedError);
  c.prepare(48000.0);
  CHECK_NOTHROW(require_prepared(s));
}

TEST_CASE("reset clears reactive state", "[core][prepare]") {
  auto model = make_circuit("lpf2");
  model->prepare(48000.0);
  const auto input = test::uniform_noise(512, 2);
  const auto first = test::run(*model, input);
  model->reset();
  CHECK(test::run(*model, input) == first);
}
