#pragma once

#include "wdf/errors.hpp"

namespace wdf {

/// Shockley diode: i = Is (exp(v / (n Vt)) - 1).
struct DiodeParams {
  double saturation_current = 2.52e-9;  // Is, amps
  double thermal_voltage = 25.85e-3;    // Vt, volts
  double ideality = 1.0;                // n

  double nvt() const noexcept { return ideality * thermal_voltage; }

  void validate() const {
    if (!(saturation_current > 0.0)) throw ParameterError("diode saturation current must be > 0");
    if (!(thermal_voltage > 0.0)) throw ParameterError("diode thermal voltage must be > 0");
    if (!(ideality >= 1.0)) throw ParameterError("diode ideality factor must be >= 1");
  }
};

}  // namespace wdf
