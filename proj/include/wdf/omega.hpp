#pragma once

// Wright omega function: the w solving w + ln(w) = x, i.e. W(exp(x)).

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace wdf {

enum class OmegaEvaluator { Fast, Exact };

namespace fastmath {

/// 2^x from the IEEE-754 exponent field and a quintic for the fraction.
/// Relative error below 1.2e-7; exact at integer x.
inline double pow2(double x) noexcept {
  if (x < -1022.0) return 0.0;
  if (x > 1023.0) return std::numeric_limits<double>::infinity();
  const double k = std::floor(x);
  const double f = x - k;
  const double r =
      0.3068476922486115 +
      f * (0.06669156531715661 + f * (0.010868374839200706 + f * 0.001878317729889276));
  const double p = 1.0 + f + f * (f - 1.0) * r;
  const auto bits = std::bit_cast<std::int64_t>(p) + (static_cast<std::int64_t>(k) << 52);
  return std::bit_cast<double>(bits);
}

/// log2(x) for positive normal x from the exponent field and a polynomial in
/// the mantissa. Absolute error below 3.3e-6; exact at powers of two.
inline double log2(double x) noexcept {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  const auto exponent = static_cast<int>((bits >> 52) & 0x7ff) - 1023;
  const double m =
      std::bit_cast<double>((bits & 0x000fffffffffffffULL) | 0x3ff0000000000000ULL);
  const double u = m - 1.0;
  const double r =
      -0.4425016838984977 +
      u * (0.2751664492961339 +
           u * (-0.1805764843186969 + u * (0.09425583695185552 + u * -0.025125573591423287)));
  return static_cast<double>(exponent) + u + u * (u - 1.0) * r;
}

inline double exp(double x) noexcept { return pow2(x * 1.4426950408889634); }
inline double log(double x) noexcept { return log2(x) * 0.6931471805599453; }

}  // namespace fastmath

/// Piecewise initial guess from bit-level exp/log followed by one Newton step
/// on w = exp(x - w). Relative error below 1e-5 on [-10, 20].
inline double omega_fast(double x) noexcept {
  constexpr double kLow = -2.0;
  constexpr double kHigh = 5.0;
  double y;
  if (x < kLow) {
    const double e = fastmath::exp(x);
    y = e - e * e + 1.5 * e * e * e;
  } else if (x > kHigh) {
    const double l = fastmath::log(x);
    y = x - l + l / x + l * (l - 2.0) / (2.0 * x * x);
  } else {
    y = 0.5678728131468019 +
        x * (0.3617319966508335 +
             x * (0.07215422459562704 +
                  x * (-0.0011332091505296216 +
                       x * (-0.0011250582097461913 + x * 0.00011474954416669861))));
  }
  return y - (y - fastmath::exp(x - y)) / (y + 1.0);
}

/// Newton iteration on w + ln(w) = x until the step is within 2 ulp.
inline double omega_exact(double x) noexcept {
  if (std::isnan(x)) return x;
  if (x == std::numeric_limits<double>::infinity()) return x;
  if (x < -700.0) return std::exp(x);

  double w;
  if (x < -2.0) {
    const double e = std::exp(x);
    w = e - e * e;
  } else if (x > 2.0) {
    w = x - std::log(x);
  } else {
    w = 0.5671432904097838 + 0.3618 * x + 0.0709 * x * x;
  }
  if (!(w > 0.0)) w = std::numeric_limits<double>::min();

  for (int iter = 0; iter < 100; ++iter) {
    const double step = (w + std::log(w) - x) * w / (1.0 + w);
    double next = w - step;
    if (!(next > 0.0)) next = 0.5 * w;
    const bool done = std::abs(next - w) <= 2.0 * std::numeric_limits<double>::epsilon() * next;
    w = next;
    if (done) break;
  }
  return w;
}

inline double omega(double x, OmegaEvaluator evaluator) noexcept {
  return evaluator == OmegaEvaluator::Fast ? omega_fast(x) : omega_exact(x);
}

}  // namespace wdf
