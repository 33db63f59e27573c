#pragma once

#include "wdf/diode_params.hpp"

namespace wdf::oracle {

enum class DiodeTopology { Single, AntiparallelPair };

/// Reflected wave of a diode (or pair) terminating a port of resistance R
/// under incident wave a. Solves (a - v) / R = i(v) for the port voltage by
/// Newton with a bisection fallback inside a sign-change bracket, then
/// returns b = 2 v - a.
double implicit_diode_solve(const DiodeParams& params, double port_resistance, double a,
                            DiodeTopology topology);

}  // namespace wdf::oracle
