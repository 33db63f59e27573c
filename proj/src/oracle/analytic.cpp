#include "wdf/oracle/analytic.hpp"

#include <cmath>
#include <numbers>

#include "wdf/errors.hpp"

namespace wdf::oracle {

std::complex<double> analog_transfer(AnalyticFamily family, std::span<const double> values,
                                     std::complex<double> s) {
  auto need = [&](std::size_t n) {
    if (values.size() != n) throw ParameterError("wrong number of component values");
  };
  switch (family) {
    case AnalyticFamily::Divider:
      need(2);
      return values[1] / (values[0] + values[1]);
    case AnalyticFamily::Rc1:
      need(2);
      return 1.0 / (1.0 + s * values[0] * values[1]);
    case AnalyticFamily::Lpf2: {
      need(4);
      const double r1 = values[0], c1 = values[1], r2 = values[2], c2 = values[3];
      return 1.0 / (s * s * (r1 * c1 * r2 * c2) + s * (r1 * c1 + r2 * c2 + r1 * c2) + 1.0);
    }
  }
  return 0.0;
}

std::vector<std::complex<double>> analytic_response(AnalyticFamily family,
                                                    std::span<const double> values,
                                                    std::span<const double> frequencies,
                                                    double sample_rate) {
  std::vector<std::complex<double>> h;
  h.reserve(frequencies.size());
  for (double f : frequencies) {
    if (!(f >= 0.0 && f < 0.5 * sample_rate))
      throw ParameterError("frequency must lie in [0, fs/2)");
    const double warped = 2.0 * sample_rate * std::tan(std::numbers::pi * f / sample_rate);
    h.push_back(analog_transfer(family, values, {0.0, warped}));
  }
  return h;
}

}  // namespace wdf::oracle
