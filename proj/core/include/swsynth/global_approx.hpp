#pragma once

#include <optional>
#include <vector>

#include "swsynth/cube_indicator.hpp"
#include "swsynth/target_function.hpp"

namespace swsynth {

/// Per-cube extremum estimates (corner + sub-grid samples, not true extrema).
struct CubeStats {
  double v_min = 0.0;
  double v_max = 0.0;
  double v_mid = 0.0;
};

/// The whole end-to-end construction state: cube grid r Z^d clipped to the
/// cubes meeting K, per-cube mid-values, nested slice sets and the per-cube
/// indicator specs (omega = 2, accuracy eps / (|X_K| n_slices)).
struct GridConstruction {
  HyperCube domain;  // K
  double eps = 0.0;
  double delta = 0.0;
  double r = 0.0;
  double range_shift = 0.0;  // min_K f estimate; slicing runs on f - range_shift
  double range_width = 0.0;
  int stats_subgrid = 3;  // per-axis density of the v_min/v_max sub-grid

  std::vector<std::vector<double>> centers;  // X_K
  std::vector<CubeStats> stats;              // parallel to centers, raw f values
  int n_slices = 1;
  std::vector<std::vector<std::size_t>> slices;  // slices[i-1] = indices of X_{i}
  double per_cube_eps = 0.0;
  std::vector<CubeIndicatorSpec> specs;  // parallel to centers
};

/// Largest sampled distance threshold such that every pair of grid samples
/// closer than it differs by at most eps, scaled by the conservative factor
/// 0.9 and clamped to (0, diam K]. Catalog functions with a closed form
/// (constant, linear) bypass the sampling.
double estimate_inverse_modulus(const TargetFunction& f, double eps, int grid_density = 12);

struct BuildOptions {
  int modulus_grid_density = 12;
  int stats_subgrid = 3;                // per-axis sub-grid for v_min/v_max
  std::optional<double> r_override;     // test hook: force the cube half-width
};

/// Requires eps in (0, 1/2). Guard: |X_K| <= 1e5.
GridConstruction build_grid(const TargetFunction& f, double eps, const BuildOptions& opts = {});

/// p_i(y) = 1 - prod_{x in X_i} (1 - g_x(y)), evaluated as
/// -expm1(sum log(-expm1(log g_x))) so near-one factors keep precision.
double eval_slice(const GridConstruction& gc, int slice_index, std::span<const double> y);

/// g(y) = eps * sum_j p_j(y) + range_shift.
double eval_global(const GridConstruction& gc, std::span<const double> y);

struct SupError {
  double sup_err = 0.0;
  std::vector<double> witness;
};

/// Max |f - g| over a regular grid (sample_density per axis) plus 1e3
/// Halton points in K.
SupError measure_sup_error(const GridConstruction& gc, const TargetFunction& f,
                           int sample_density);

struct TheoremBound {
  LogValue h;
  double C = 0.0;
  LogValue lattice_factor;  // sqrt(pi)^d (diam/2 + delta/6)^d / Gamma(d/2+1)
};

/// Final unit-count bound. d >= 2 unless force_low_dim is set.
TheoremBound theorem_bound(int d, double diam_K, double delta, double eps,
                           bool force_low_dim = false);

/// log10 of the Lemma-chain unit count of the fully expanded construction,
/// computed from counts alone: (2e(nu kappa^nu |X_K| / d + 1))^d.
double expanded_unit_count_log10(const GridConstruction& gc);

struct PartitionReport {
  std::size_t in_cover = 0;       // union of I(x, r)
  std::size_t outside = 0;        // K minus union of I(x, 2r)
  std::size_t in_annulus = 0;     // the shell in between
  std::size_t double_classified = 0;
  std::size_t total = 0;
};

/// Classify samples against slice `slice_index` into the three disjoint
/// cases; every sample must land in exactly one.
PartitionReport case_partition_check(const GridConstruction& gc, int slice_index,
                                     const std::vector<std::vector<double>>& samples);

/// Regular grid plus Halton points covering K; shared by the sweeps.
std::vector<std::vector<double>> sample_points_in_cube(const HyperCube& box, int grid_density,
                                                       std::size_t halton_count);

}  // namespace swsynth
