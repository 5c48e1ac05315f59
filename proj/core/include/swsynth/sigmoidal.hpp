#pragma once

#include <vector>

#include "swsynth/cube_indicator.hpp"
#include "swsynth/expnet.hpp"

namespace swsynth {

/// 1D approximation of t -> c e^t on an interval by a sum of transfer units
/// alpha * sigma(beta t - gamma).
struct Exp1DApproximation {
  struct Unit {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
  };
  std::vector<Unit> units;
  Transfer kind = Transfer::step;
  double lo = 0.0, hi = 0.0;  // approximation interval
  double tol = 0.0;
  double achieved_err = 0.0;  // measured on a dense probe grid
};

/// Staircase (step/sigmoid) or piecewise-linear (relu) approximant with
/// breakpoints at equal function-value increments of size tol. For sigmoid
/// the sharpness is raised until the measured error fits the budget.
/// Guard: more than 1e6 units is rejected as infeasible.
Exp1DApproximation approximate_exp_1d(double c, double M, double tol, Transfer kind);

/// Same construction on an asymmetric interval [lo, hi].
Exp1DApproximation approximate_exp_on_interval(double c, double lo, double hi, double tol,
                                               Transfer kind);

struct LiftedNetwork {
  ExpNetwork net;
  std::vector<std::size_t> units_per_source;  // u_i per input exp unit
  double budget = 0.0;                        // eps/2, the lift's error share
};

/// Replace each exp unit by a 1D sum of `kind` units on the exact range of
/// its argument over the box K (interval arithmetic), per-unit tolerance
/// eps/(2h). The lift alone contributes at most eps/2 of composite error.
LiftedNetwork lift_to_two_layer(const ExpNetwork& net, const HyperCube& K, double eps,
                                Transfer kind);

}  // namespace swsynth
