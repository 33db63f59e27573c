#pragma once

// Series and parallel junctions under test: two controllable children, the
// port waves seen from the adaptor, and the Kirchhoff residuals of a scatter.

#include <algorithm>
#include <cmath>
#include <random>

#include "wdf/api.hpp"

namespace wdf::test {

/// Two controllable children (resistive voltage sources reflect their
/// voltage) under a series or parallel adaptor of the given API.
template <typename Api, template <typename, typename, typename> class Kind>
struct Junction {
  using Src = typename Api::template ResistiveVoltageSource<double>;
  Src c1;
  Src c2;
  Kind<double, Src, Src> adaptor;

  Junction(double r1, double r2) : c1(r1), c2(r2), adaptor(c1, c2) {}

  /// Full scatter with the children reflecting b1c and b2c; returns b_up.
  double scatter(double b1c, double b2c, double a_up) {
    c1.set_voltage(b1c);
    c2.set_voltage(b2c);
    const double b_up = adaptor.reflected();
    adaptor.incident(a_up);
    return b_up;
  }

  // Port waves seen from the adaptor: incident = child's reflection,
  // reflected = what the child received.
  double a(int k) const { return k == 1 ? c1.port.b : c2.port.b; }
  double b(int k) const { return k == 1 ? c1.port.a : c2.port.a; }
  double r(int k) const { return k == 1 ? c1.port.R : c2.port.R; }
};

template <typename Api>
using SeriesOf = typename Api::template Series<double, typename Api::template ResistiveVoltageSource<double>,
                                                typename Api::template ResistiveVoltageSource<double>>;

template <typename Api, typename T, typename A, typename B>
using SeriesT = typename Api::template Series<T, A, B>;
template <typename Api, typename T, typename A, typename B>
using ParallelT = typename Api::template Parallel<T, A, B>;

template <typename Api>
struct Bind {
  template <typename T, typename A, typename B>
  using Series = SeriesT<Api, T, A, B>;
  template <typename T, typename A, typename B>
  using Parallel = ParallelT<Api, T, A, B>;
};

template <typename Api>
using SeriesJunction = Junction<Api, Bind<Api>::template Series>;
template <typename Api>
using ParallelJunction = Junction<Api, Bind<Api>::template Parallel>;

struct Residuals {
  double kvl;  // series: sum of port voltages; parallel: spread of port voltages
  double kcl;  // series: spread of port currents; parallel: sum of port currents
  double scale_v;
  double scale_i;
};

/// Rounding scales of the port voltages and currents: the largest wave, and
/// the largest wave over its own port's 2R. A port current is a difference
/// of two waves, so its error tracks the waves rather than the result.
template <typename J>
void wave_scales(const J& j, double a_up, double b_up, Residuals& out) {
  const double r_up = j.adaptor.port.R;
  const double w1 = std::max(std::abs(j.a(1)), std::abs(j.b(1)));
  const double w2 = std::max(std::abs(j.a(2)), std::abs(j.b(2)));
  const double w3 = std::max(std::abs(a_up), std::abs(b_up));
  out.scale_v = std::max({w1, w2, w3, 1e-300});
  out.scale_i = std::max({w1 / (2 * j.r(1)), w2 / (2 * j.r(2)), w3 / (2 * r_up), 1e-300});
}

template <typename J>
Residuals series_residuals(const J& j, double a_up, double b_up) {
  const double r_up = j.adaptor.port.R;
  const double v[3] = {(j.a(1) + j.b(1)) / 2, (j.a(2) + j.b(2)) / 2, (a_up + b_up) / 2};
  const double i[3] = {(j.a(1) - j.b(1)) / (2 * j.r(1)), (j.a(2) - j.b(2)) / (2 * j.r(2)),
                       (a_up - b_up) / (2 * r_up)};
  Residuals out{};
  out.kvl = std::abs(v[0] + v[1] + v[2]);
  out.kcl = std::max(std::abs(i[0] - i[2]), std::abs(i[1] - i[2]));
  wave_scales(j, a_up, b_up, out);
  return out;
}

template <typename J>
Residuals parallel_residuals(const J& j, double a_up, double b_up) {
  const double r_up = j.adaptor.port.R;
  const double v[3] = {(j.a(1) + j.b(1)) / 2, (j.a(2) + j.b(2)) / 2, (a_up + b_up) / 2};
  const double i[3] = {(j.a(1) - j.b(1)) / (2 * j.r(1)), (j.a(2) - j.b(2)) / (2 * j.r(2)),
                       (a_up - b_up) / (2 * r_up)};
  Residuals out{};
  out.kvl = std::max(std::abs(v[0] - v[2]), std::abs(v[1] - v[2]));
  out.kcl = std::abs(i[0] + i[1] + i[2]);
  wave_scales(j, a_up, b_up, out);
  return out;
}

struct RandomCase {
  double r1, r2, b1c, b2c, a_up, a_up2;
};

RandomCase random_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> exponent(0.0, 6.0);
  std::uniform_real_distribution<double> wave(-10.0, 10.0);
  return {std::pow(10.0, exponent(rng)), std::pow(10.0, exponent(rng)), wave(rng), wave(rng),
          wave(rng), wave(rng)};
}

}  // namespace wdf::test
