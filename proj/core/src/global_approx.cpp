#include "swsynth/global_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "swsynth/halton.hpp"

namespace swsynth {

std::vector<std::vector<double>> sample_points_in_cube(const HyperCube& box, int grid_density,
                                                       std::size_t halton_count) {
  int d = box.dim();
  std::vector<std::vector<double>> pts;
  if (grid_density >= 2) {
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    while (true) {
      std::vector<double> p(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        double t = static_cast<double>(idx[static_cast<std::size_t>(i)]) / (grid_density - 1);
        p[static_cast<std::size_t>(i)] =
            box.center[static_cast<std::size_t>(i)] + (2.0 * t - 1.0) * box.half_width;
      }
      pts.push_back(std::move(p));
      int i = 0;
      while (i < d && ++idx[static_cast<std::size_t>(i)] >= grid_density) {
        idx[static_cast<std::size_t>(i)] = 0;
        ++i;
      }
      if (i == d) break;
    }
  }
  for (auto& h : halton_points(halton_count, d)) {
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      p[static_cast<std::size_t>(i)] = box.center[static_cast<std::size_t>(i)] +
                                       (2.0 * h[static_cast<std::size_t>(i)] - 1.0) * box.half_width;
    pts.push_back(std::move(p));
  }
  return pts;
}

double estimate_inverse_modulus(const TargetFunction& f, double eps, int grid_density) {
  if (eps <= 0.0) throw std::invalid_argument("estimate_inverse_modulus: eps must be positive");
  if (f.domain().half_width <= 0.0)
    throw std::invalid_argument("estimate_inverse_modulus: degenerate domain");
  double diam = f.domain().diameter();

  if (auto exact = f.closed_form_inverse_modulus(eps)) return *exact;

  if (grid_density < 2)
    throw std::invalid_argument("estimate_inverse_modulus: grid_density must be >= 2");
  auto pts = sample_points_in_cube(f.domain(), grid_density, 0);
  std::vector<double> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f.eval(pts[i]);

  struct Pair {
    double dist, dv;
  };
  std::vector<Pair> pairs;
  pairs.reserve(pts.size() * (pts.size() - 1) / 2);
  int d = f.dim();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double q = 0.0;
      for (int a = 0; a < d; ++a) {
        double dx = pts[i][static_cast<std::size_t>(a)] - pts[j][static_cast<std::size_t>(a)];
        q += dx * dx;
      }
      pairs.push_back({std::sqrt(q), std::abs(vals[i] - vals[j])});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.dist < b.dist; });

  // Largest threshold below the nearest violating pair.
  double delta_hat = diam;
  for (const auto& p : pairs) {
    if (p.dv > eps) {
      delta_hat = p.dist;
      break;
    }
  }
  return std::clamp(0.9 * delta_hat, std::numeric_limits<double>::min(), diam);
}

namespace {

// Corner + sub-grid samples of f over the full cube I(x, r).
CubeStats cube_stats(const TargetFunction& f, const HyperCube& cube, int subgrid) {
  auto pts = sample_points_in_cube(cube, std::max(2, subgrid), 0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : pts) {
    double v = f.eval(p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi, 0.5 * (lo + hi)};
}

}  // namespace

GridConstruction build_grid(const TargetFunction& f, double eps, const BuildOptions& opts) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("build_grid: eps must lie in (0, 1/2)");

  GridConstruction gc;
  gc.domain = f.domain();
  gc.eps = eps;
  gc.stats_subgrid = opts.stats_subgrid;
  gc.delta = estimate_inverse_modulus(f, eps / 2.0, opts.modulus_grid_density);

  int d = f.dim();
  gc.r = opts.r_override.value_or(gc.delta / (3.0 * std::sqrt(static_cast<double>(d))));

  // Centers m*r with I(m*r, r) meeting K, i.e. m*r within [K_lo - r, K_hi + r]
  // per axis. The 1e-9 nudges keep exact boundary multiples in.
  std::vector<long> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  double expected = 1.0;
  for (int i = 0; i < d; ++i) {
    double k_lo = gc.domain.center[static_cast<std::size_t>(i)] - gc.domain.half_width;
    double k_hi = gc.domain.center[static_cast<std::size_t>(i)] + gc.domain.half_width;
    lo[static_cast<std::size_t>(i)] = static_cast<long>(std::ceil((k_lo - gc.r) / gc.r - 1e-9));
    hi[static_cast<std::size_t>(i)] = static_cast<long>(std::floor((k_hi + gc.r) / gc.r + 1e-9));
    expected *= static_cast<double>(hi[static_cast<std::size_t>(i)] -
                                    lo[static_cast<std::size_t>(i)] + 1);
  }
  if (expected > 1e5)
    throw std::invalid_argument("build_grid: grid infeasible; increase eps or shrink K");

  std::vector<long> m = lo;
  while (true) {
    std::vector<double> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)] * gc.r;
    gc.centers.push_back(std::move(c));
    int i = 0;
    while (i < d && ++m[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)]) {
      m[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
      ++i;
    }
    if (i == d) break;
  }

  for (const auto& c : gc.centers)
    gc.stats.push_back(cube_stats(f, HyperCube{c, gc.r}, opts.stats_subgrid));

  // Global range over K samples; range_shift makes the slicing thresholds
  // i*eps (i >= 1) meaningful for arbitrary-range f.
  double min_f = std::numeric_limits<double>::infinity();
  double max_f = -min_f;
  for (const auto& p : sample_points_in_cube(gc.domain, std::max(10, opts.modulus_grid_density), 0)) {
    double v = f.eval(p);
    min_f = std::min(min_f, v);
    max_f = std::max(max_f, v);
  }
  gc.range_shift = min_f;
  gc.range_width = max_f - min_f;

  gc.n_slices = std::max(1, static_cast<int>(std::floor(2.0 / eps * gc.range_width)) - 1);

  gc.slices.resize(static_cast<std::size_t>(gc.n_slices));
  for (std::size_t c = 0; c < gc.centers.size(); ++c) {
    double v = gc.stats[c].v_mid - gc.range_shift;
    for (int i = 1; i <= gc.n_slices; ++i)
      if (v >= i * eps) gc.slices[static_cast<std::size_t>(i - 1)].push_back(c);
  }

  gc.per_cube_eps = eps / (static_cast<double>(gc.centers.size()) * gc.n_slices);
  double diam_K = gc.domain.diameter();
  for (const auto& c : gc.centers)
    gc.specs.push_back(make_spec(HyperCube{c, gc.r}, 2.0, gc.per_cube_eps, diam_K));
  return gc;
}

double eval_slice(const GridConstruction& gc, int slice_index, std::span<const double> y) {
  if (slice_index < 1 || slice_index > gc.n_slices)
    throw std::invalid_argument("eval_slice: slice index out of range");
  double log_prod = 0.0;  // sum of log(1 - g_x(y))
  for (std::size_t c : gc.slices[static_cast<std::size_t>(slice_index - 1)]) {
    double log_g = eval_g(gc.specs[c], y).log_value;
    log_prod += std::log(-std::expm1(log_g));
    if (log_prod == -std::numeric_limits<double>::infinity()) break;  // some g = 1
  }
  return -std::expm1(log_prod);
}

double eval_global(const GridConstruction& gc, std::span<const double> y) {
  double s = 0.0;
  for (int i = 1; i <= gc.n_slices; ++i) s += eval_slice(gc, i, y);
  return gc.eps * s + gc.range_shift;
}

SupError measure_sup_error(const GridConstruction& gc, const TargetFunction& f,
                           int sample_density) {
  if (sample_density < 10)
    throw std::invalid_argument("measure_sup_error: sample_density must be >= 10");
  SupError out;
  out.sup_err = -1.0;
  for (const auto& p : sample_points_in_cube(gc.domain, sample_density, 1000)) {
    double err = std::abs(f.eval(p) - eval_global(gc, p));
    if (err > out.sup_err) {
      out.sup_err = err;
      out.witness = p;
    }
  }
  return out;
}

namespace {

double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

TheoremBound theorem_bound(int d, double diam_K, double delta, double eps, bool force_low_dim) {
  if (d < 2 && !force_low_dim)
    throw std::invalid_argument("theorem_bound: d must be >= 2 (pass force_low_dim to explore)");
  if (d < 1 || diam_K <= 0.0 || delta <= 0.0 || eps <= 0.0)
    throw std::invalid_argument("theorem_bound: parameter out of range");

  TheoremBound out;
  out.C = (4.0 + 1.5 * std::log2(static_cast<double>(d))) *
          3.0 * std::sqrt(static_cast<double>(d)) * diam_K / delta;
  double lf_log = 0.5 * d * std::log(std::numbers::pi) +
                  d * std::log(diam_K / 2.0 + delta / 6.0) - std::lgamma(d / 2.0 + 1.0);
  out.lattice_factor = LogValue::from_log(+1, lf_log);
  double inner = logaddexp(lf_log + out.C * std::log(2.0 / eps), 0.0);
  out.h = LogValue::from_log(+1, d * (std::log(2.0 * std::numbers::e / d) + inner));
  return out;
}

double expanded_unit_count_log10(const GridConstruction& gc) {
  if (gc.specs.empty()) return 0.0;
  int d = gc.domain.dim();
  const auto& spec = gc.specs.front();  // all cubes share n, k
  double log_N = std::log(static_cast<double>(spec.n)) + spec.n * spec.k.log_abs +
                 std::log(static_cast<double>(gc.centers.size()));
  double log_h = d * (std::log(2.0 * std::numbers::e) +
                      logaddexp(log_N - std::log(static_cast<double>(d)), 0.0));
  return log_h / std::numbers::ln10;
}

PartitionReport case_partition_check(const GridConstruction& gc, int slice_index,
                                     const std::vector<std::vector<double>>& samples) {
  if (slice_index < 1 || slice_index > gc.n_slices)
    throw std::invalid_argument("case_partition_check: slice index out of range");
  const auto& slice = gc.slices[static_cast<std::size_t>(slice_index - 1)];

  PartitionReport rep;
  for (const auto& y : samples) {
    bool in_r = false, in_2r = false;
    for (std::size_t c : slice) {
      HyperCube cube{gc.centers[c], gc.r};
      if (cube.contains(y)) in_r = true;
      if (cube.contains(y, 2.0)) in_2r = true;
      if (in_r) break;
    }
    bool case1 = in_r;
    bool case2 = !in_2r;
    bool case3 = in_2r && !in_r;
    int hits = (case1 ? 1 : 0) + (case2 ? 1 : 0) + (case3 ? 1 : 0);
    if (hits != 1) ++rep.double_classified;
    if (case1) ++rep.in_cover;
    if (case2) ++rep.outside;
    if (case3) ++rep.in_annulus;
    ++rep.total;
  }
  return rep;
}

}  // namespace swsynth
