#include "wdf/oracle/implicit_diode.hpp"

#include <cmath>
#include <limits>

#include "wdf/errors.hpp"

namespace wdf::oracle {

double implicit_diode_solve(const DiodeParams& params, double r, double a,
                            DiodeTopology topology) {
  params.validate();
  if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("port resistance must be positive");
  if (!std::isfinite(a)) throw ParameterError("incident wave must be finite");

  const double is = params.saturation_current;
  const double nvt = params.nvt();
  const bool pair = topology == DiodeTopology::AntiparallelPair;

  // f(v) = (a - v) / R - i(v) is strictly decreasing; its root lies between
  // 0 and a, since i(v) has the sign of v.
  auto f = [&](double v) {
    const double e = std::exp(v / nvt);
    const double i = pair ? is * (e - 1.0 / e) : is * (e - 1.0);
    return (a - v) / r - i;
  };
  auto df = [&](double v) {
    const double e = std::exp(v / nvt);
    return -1.0 / r - (pair ? is * (e + 1.0 / e) : is * e) / nvt;
  };

  double lo = std::min(a, 0.0);
  double hi = std::max(a, 0.0);
  if (lo == hi) return -a;  // a = 0: v = 0 for both topologies

  double v = 0.5 * (lo + hi);
  for (int iter = 0; iter < 500; ++iter) {
    const double fv = f(v);
    if (fv == 0.0) break;
    if (fv > 0.0)
      lo = v;
    else
      hi = v;

    double next = v - fv / df(v);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - v);
    v = next;
    if (step <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(v) ||
        hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)))
      break;
  }
  return 2.0 * v - a;
}

}  // namespace wdf::oracle
