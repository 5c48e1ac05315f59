#include "swsynth/sigmoidal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace swsynth {

namespace {

double sigma_of(Transfer kind, double z) {
  switch (kind) {
    case Transfer::step: return z >= 0.0 ? 1.0 : 0.0;
    case Transfer::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Transfer::relu: return z > 0.0 ? z : 0.0;
    default: throw std::invalid_argument("approximate_exp_1d: kind must be step, sigmoid or relu");
  }
}

double eval_approx(const Exp1DApproximation& a, double t) {
  double s = 0.0;
  for (const auto& u : a.units) s += u.alpha * sigma_of(a.kind, u.beta * t - u.gamma);
  return s;
}

double measure_err(const Exp1DApproximation& a, double c, int probes = 10000) {
  double worst = 0.0;
  for (int i = 0; i < probes; ++i) {
    double t = a.lo + (a.hi - a.lo) * i / (probes - 1);
    worst = std::max(worst, std::abs(c * std::exp(t) - eval_approx(a, t)));
  }
  return worst;
}

// Breakpoints where |c| e^t crosses v_lo + j*tol, j = 1..J.
std::vector<double> value_breakpoints(double abs_c, double lo, double hi, double tol) {
  double v_lo = abs_c * std::exp(lo);
  double v_hi = abs_c * std::exp(hi);
  double rise = v_hi - v_lo;
  double count = std::floor(rise / tol);
  if (count > 1e6) throw std::invalid_argument("approximate_exp_1d: infeasible tolerance");
  std::vector<double> ts;
  for (long j = 1; j <= static_cast<long>(count); ++j)
    ts.push_back(std::log((v_lo + j * tol) / abs_c));
  return ts;
}

Exp1DApproximation build_staircase(double c, double lo, double hi, double tol, Transfer kind,
                                   double sharpness) {
  double sign = c > 0.0 ? 1.0 : -1.0;
  double abs_c = std::abs(c);
  auto ts = value_breakpoints(abs_c, lo, hi, tol);

  Exp1DApproximation a;
  a.kind = kind;
  a.lo = lo;
  a.hi = hi;
  a.tol = tol;
  // Constant plateau v_lo + tol/2; a beta = 0 unit fires everywhere
  // (step(c0) = 1 for c0 > 0, sigmoid saturates at -gamma = 40).
  double rise = abs_c * (std::exp(hi) - std::exp(lo));
  double base = abs_c * std::exp(lo) + std::min(tol, rise) / 2.0;
  if (kind == Transfer::step) {
    a.units.push_back({sign * base, 0.0, -1.0});
    for (double t : ts) a.units.push_back({sign * tol, 1.0, t});
  } else {
    a.units.push_back({sign * base, 0.0, -40.0});
    for (double t : ts) a.units.push_back({sign * tol, sharpness, sharpness * t});
  }
  return a;
}

Exp1DApproximation build_pwl(double c, double lo, double hi, double tol) {
  double sign = c > 0.0 ? 1.0 : -1.0;
  double abs_c = std::abs(c);
  auto ts = value_breakpoints(abs_c, lo, hi, tol);

  std::vector<double> knots;
  knots.push_back(lo);
  for (double t : ts)
    if (t > knots.back()) knots.push_back(t);
  if (hi > knots.back()) knots.push_back(hi);

  Exp1DApproximation a;
  a.kind = Transfer::relu;
  a.lo = lo;
  a.hi = hi;
  a.tol = tol;
  a.units.push_back({sign * abs_c * std::exp(lo), 0.0, -1.0});  // relu(1) = 1
  double prev_slope = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double y0 = abs_c * std::exp(knots[i]);
    double y1 = abs_c * std::exp(knots[i + 1]);
    double slope = (y1 - y0) / (knots[i + 1] - knots[i]);
    a.units.push_back({sign * (slope - prev_slope), 1.0, knots[i]});
    prev_slope = slope;
  }
  return a;
}

}  // namespace

Exp1DApproximation approximate_exp_on_interval(double c, double lo, double hi, double tol,
                                               Transfer kind) {
  if (tol <= 0.0) throw std::invalid_argument("approximate_exp_1d: tol must be positive");
  if (hi < lo) throw std::invalid_argument("approximate_exp_1d: empty interval");
  if (kind == Transfer::exp) throw std::invalid_argument("approximate_exp_1d: kind must not be exp");

  Exp1DApproximation a;
  a.kind = kind;
  a.lo = lo;
  a.hi = hi;
  a.tol = tol;
  if (c == 0.0) return a;

  if (kind == Transfer::relu) {
    a = build_pwl(c, lo, hi, tol);
    double t = tol;
    while ((a.achieved_err = measure_err(a, c)) > tol) {
      t /= 2.0;
      a = build_pwl(c, lo, hi, t);
      a.tol = tol;
      if (a.units.size() > 1e6) throw std::invalid_argument("approximate_exp_1d: infeasible tolerance");
    }
    return a;
  }

  if (kind == Transfer::step) {
    a = build_staircase(c, lo, hi, tol, kind, 0.0);
    a.achieved_err = measure_err(a, c);
    return a;
  }

  // Sigmoid: start with the transition width under 1/10 of the narrowest
  // breakpoint gap and sharpen until the measured error fits.
  auto ts = value_breakpoints(std::abs(c), lo, hi, tol);
  double min_gap = hi - lo;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) min_gap = std::min(min_gap, ts[i + 1] - ts[i]);
  if (min_gap <= 0.0) min_gap = (hi - lo) / std::max<std::size_t>(1, ts.size());
  double beta = 10.0 * std::log(100.0 * (ts.size() + 1.0)) / min_gap;
  for (int attempt = 0; attempt < 60; ++attempt) {
    a = build_staircase(c, lo, hi, tol, kind, beta);
    a.achieved_err = measure_err(a, c);
    if (a.achieved_err <= tol) return a;
    beta *= 2.0;
  }
  throw std::runtime_error("approximate_exp_1d: sigmoid sharpening did not converge");
}

Exp1DApproximation approximate_exp_1d(double c, double M, double tol, Transfer kind) {
  if (M <= 0.0) throw std::invalid_argument("approximate_exp_1d: M must be positive");
  return approximate_exp_on_interval(c, -M, M, tol, kind);
}

LiftedNetwork lift_to_two_layer(const ExpNetwork& net, const HyperCube& K, double eps,
                                Transfer kind) {
  if (net.transfer != Transfer::exp)
    throw std::invalid_argument("lift_to_two_layer: input must have exp transfer");
  if (K.dim() != net.dim) throw std::invalid_argument("lift_to_two_layer: domain dimension mismatch");
  if (eps <= 0.0) throw std::invalid_argument("lift_to_two_layer: eps must be positive");

  LiftedNetwork out;
  out.net.dim = net.dim;
  out.net.transfer = kind;
  out.budget = eps / 2.0;
  if (net.units.empty()) return out;

  double tol = eps / (2.0 * static_cast<double>(net.units.size()));
  for (std::size_t i = 0; i < net.units.size(); ++i) {
    const auto& u = net.units[i];
    double c = u.coeff.to_real();
    if (!std::isfinite(c))
      throw std::invalid_argument("lift_to_two_layer: unit " + std::to_string(i) +
                                  " coefficient exceeds double range");
    // Exact range of <w,x>+b over the box K (interval arithmetic).
    double mid = u.bias, rad = 0.0;
    for (int j = 0; j < net.dim; ++j) {
      mid += u.weight[static_cast<std::size_t>(j)] * K.center[static_cast<std::size_t>(j)];
      rad += std::abs(u.weight[static_cast<std::size_t>(j)]) * K.half_width;
    }
    Exp1DApproximation approx;
    try {
      approx = approximate_exp_on_interval(c, mid - rad, mid + rad, tol, kind);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("lift_to_two_layer: unit " + std::to_string(i) + ": " + e.what());
    }
    out.units_per_source.push_back(approx.units.size());
    for (const auto& su : approx.units) {
      // alpha sigma(beta(<w,x>+b) - gamma) = alpha sigma(<beta w, x> + beta b - gamma)
      std::vector<double> w(static_cast<std::size_t>(net.dim));
      for (int j = 0; j < net.dim; ++j)
        w[static_cast<std::size_t>(j)] = su.beta * u.weight[static_cast<std::size_t>(j)];
      out.net.units.push_back({LogValue::from_real(su.alpha), std::move(w), su.beta * u.bias - su.gamma});
    }
  }
  return out;
}

}  // namespace swsynth
