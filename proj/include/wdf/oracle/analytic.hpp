#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wdf::oracle {

enum class AnalyticFamily {
  Divider,  // {R1, R2}, output across R2
  Rc1,      // {R, C}, output across C
  Lpf2,     // {R1, C1, R2, C2}, output across C2
};

/// Analog prototype H(s) evaluated at s = j 2 fs tan(pi f / fs), i.e. the
/// response of the trapezoidal (bilinear) discretization.
std::vector<std::complex<double>> analytic_response(AnalyticFamily family,
                                                    std::span<const double> values,
                                                    std::span<const double> frequencies,
                                                    double sample_rate);

/// Analog transfer function at complex frequency s.
std::complex<double> analog_transfer(AnalyticFamily family, std::span<const double> values,
                                     std::complex<double> s);

}  // namespace wdf::oracle
