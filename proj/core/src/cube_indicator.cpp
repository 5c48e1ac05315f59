#include "swsynth/cube_indicator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace swsynth {

bool HyperCube::contains(std::span<const double> y, double scale) const {
  if (y.size() != center.size()) throw std::invalid_argument("HyperCube::contains: dimension mismatch");
  double z = half_width * scale;
  for (std::size_t i = 0; i < center.size(); ++i) {
    // points formed as center + t*z round to at most a few ulps outside;
    // admit that rounding so boundary samples do not flap
    double slack = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(center[i]) + z);
    if (std::abs(y[i] - center[i]) > z + slack) return false;
  }
  return true;
}

double HyperCube::diameter() const {
  return 2.0 * half_width * std::sqrt(static_cast<double>(dim()));
}

namespace {

double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

CubeIndicatorSpec make_spec(const HyperCube& cube, double omega, double eps, double diam_K) {
  if (cube.dim() < 1) throw std::invalid_argument("make_spec: dimension must be >= 1");
  if (cube.half_width <= 0.0) throw std::invalid_argument("make_spec: half_width must be positive");
  if (omega <= 1.0) throw std::invalid_argument("make_spec: omega must exceed 1");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("make_spec: eps must lie in (0,1)");
  if (diam_K <= 0.0) throw std::invalid_argument("make_spec: diam_K must be positive");

  CubeIndicatorSpec spec;
  spec.cube = cube;
  spec.omega = omega;
  spec.eps = eps;
  spec.diam_K = diam_K;

  int d = cube.dim();
  double band = (omega - 1.0) * cube.half_width;
  double log_4d = std::log(4.0 * d);
  double exposure = diam_K / band;

  spec.s = log_4d / band;
  spec.gamma = LogValue::from_log(+1, -0.5 * std::log(static_cast<double>(d)) - exposure * log_4d);
  spec.n = static_cast<int>(std::ceil(-std::log(eps) / std::log(2.0)));
  if (spec.n < 1) spec.n = 1;

  double log_k_raw = 0.5 * std::log(2.0 * d) + exposure * log_4d;
  if (log_k_raw < std::log(9e15)) {
    double k_exact = std::floor(std::exp(log_k_raw)) + 1.0;
    spec.k = LogValue::from_real(k_exact);
    spec.k_floor_skipped = false;
  } else {
    spec.k = LogValue::from_log(+1, log_k_raw);
    spec.k_floor_skipped = true;
  }
  return spec;
}

LogValue eval_p(const CubeIndicatorSpec& spec, std::span<const double> x) {
  int d = spec.dim();
  if (static_cast<int>(x.size()) != d) throw std::invalid_argument("eval_p: dimension mismatch");

  double r = spec.cube.half_width;
  double mid = (r + spec.omega * r) / 2.0;
  double log_norm = -std::log(2.0 * d);

  std::vector<LogValue> terms;
  terms.reserve(2 * static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    double x0 = spec.cube.center[static_cast<std::size_t>(i)];
    double xi = x[static_cast<std::size_t>(i)];
    terms.push_back(LogValue{+1, log_norm + spec.s * (-xi + (x0 - mid) - spec.diam_K)});
    terms.push_back(LogValue{+1, log_norm + spec.s * (xi - (x0 + mid) - spec.diam_K)});
  }
  return lv_sum(terms).value;
}

IndicatorValue eval_g(const CubeIndicatorSpec& spec, std::span<const double> x,
                      std::optional<double> log_k_override) {
  LogValue p = eval_p(spec, x);
  IndicatorValue out;
  if (p.sign > 0 && p.log_abs >= 0.0) {
    // p >= 1: base of the outer power is nonpositive, clamp (off K only).
    out.value = 0.0;
    out.log_value = -std::numeric_limits<double>::infinity();
    out.outside_range = true;
    return out;
  }
  double log_k = log_k_override.value_or(spec.k.log_abs);
  out.log_value = log_one_minus_pn_pow_kn(p, spec.n, log_k);
  out.value = std::exp(out.log_value);
  return out;
}

double membership_sum(const CubeIndicatorSpec& spec, std::span<const double> y) {
  int d = spec.dim();
  if (static_cast<int>(y.size()) != d) throw std::invalid_argument("membership_sum: dimension mismatch");
  double r = spec.cube.half_width;
  double band = (spec.omega - 1.0) * r;
  double mid = (r + spec.omega * r) / 2.0;
  double log_4d = std::log(4.0 * d);

  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    double x0 = spec.cube.center[static_cast<std::size_t>(i)];
    double yi = y[static_cast<std::size_t>(i)];
    sum += std::exp(log_4d * (-yi + (x0 - mid)) / band);
    sum += std::exp(log_4d * (yi - (x0 + mid)) / band);
  }
  return sum;
}

MembershipReport check_membership_inequalities(
    const CubeIndicatorSpec& spec,
    const std::vector<std::vector<double>>& samples_inside,
    const std::vector<std::vector<double>>& samples_outside) {
  double sqrt_d = std::sqrt(static_cast<double>(spec.dim()));
  MembershipReport rep;
  for (const auto& y : samples_inside) {
    if (!spec.cube.contains(y)) throw std::invalid_argument("inside sample not in I(x0, r)");
    ++rep.inside_checked;
    if (membership_sum(spec, y) > sqrt_d * (1.0 + 1e-12)) rep.inside_violations.push_back(y);
  }
  for (const auto& y : samples_outside) {
    if (spec.cube.contains(y, spec.omega)) throw std::invalid_argument("outside sample in I(x0, omega r)");
    ++rep.outside_checked;
    if (!(membership_sum(spec, y) > 2.0 * sqrt_d * (1.0 - 1e-12))) rep.outside_violations.push_back(y);
  }
  return rep;
}

LogValue lemma1_unit_bound(int d, double eps, double diam_K, double omega, double r) {
  if (d < 1 || eps <= 0.0 || diam_K <= 0.0 || omega <= 1.0 || r <= 0.0)
    throw std::invalid_argument("lemma1_unit_bound: parameter out of range");
  double exponent = (4.0 + 1.5 * std::log2(static_cast<double>(d))) * diam_K / ((omega - 1.0) * r);
  double inner = logaddexp(exponent * std::log(2.0 / eps), 0.0);
  double log_h = d * (std::log(2.0 * std::numbers::e / d) + inner);
  return LogValue::from_log(+1, log_h);
}

ExpandedIndicator expand_indicator(const CubeIndicatorSpec& spec,
                                   std::optional<std::uint64_t> k_override) {
  std::uint64_t k;
  bool overridden = false;
  if (k_override) {
    k = *k_override;
    overridden = true;
  } else {
    if (spec.k_floor_skipped || spec.k.log_abs > std::log(1e6))
      throw std::invalid_argument("expand_indicator: expansion infeasible at these parameters");
    k = static_cast<std::uint64_t>(spec.k.to_real());
  }
  if (k < 1) throw std::invalid_argument("expand_indicator: k must be >= 1");

  double kn_est = spec.n * std::pow(static_cast<double>(k), spec.n);
  if (kn_est > 1e4)
    throw std::invalid_argument("expand_indicator: expansion infeasible at these parameters");
  std::uint64_t kn = 1;
  for (int i = 0; i < spec.n; ++i) kn *= k;

  int d = spec.dim();
  double r = spec.cube.half_width;
  double mid = (r + spec.omega * r) / 2.0;
  double log_norm = -std::log(2.0 * d);

  SymbolicExpSum p;
  p.dim = d;
  p.scale = spec.s;
  for (int i = 0; i < d; ++i) {
    double x0 = spec.cube.center[static_cast<std::size_t>(i)];
    std::vector<int> z_minus(static_cast<std::size_t>(d), 0), z_plus(static_cast<std::size_t>(d), 0);
    z_minus[static_cast<std::size_t>(i)] = -1;
    z_plus[static_cast<std::size_t>(i)] = +1;
    p.terms.emplace(std::move(z_minus),
                    SymbolicCoeff{LogValue{+1, log_norm + spec.s * ((x0 - mid) - spec.diam_K)}, false});
    p.terms.emplace(std::move(z_plus),
                    SymbolicCoeff{LogValue{+1, log_norm + spec.s * (-(x0 + mid) - spec.diam_K)}, false});
  }

  SymbolicExpSum pn = pow_expand(p, static_cast<std::uint64_t>(spec.n));
  SymbolicExpSum base = affine_combine(-1.0, pn, 1.0);
  SymbolicExpSum g = pow_expand(base, kn);

  ExpandedIndicator out;
  out.net = to_network(g);
  out.sum = std::move(g);
  out.k_overridden = overridden;
  return out;
}

}  // namespace swsynth
