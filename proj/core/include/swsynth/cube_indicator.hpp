#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swsynth/expnet.hpp"
#include "swsynth/log_value.hpp"
#include "swsynth/symbolic.hpp"

namespace swsynth {

/// Axis-aligned cube x0 + [-z, z]^d.
struct HyperCube {
  std::vector<double> center;
  double half_width = 1.0;

  int dim() const { return static_cast<int>(center.size()); }
  bool contains(std::span<const double> y, double scale = 1.0) const;
  double diameter() const;
};

/// All parameters of the soft indicator g = (1 - p^n)^{k^n} of the cube
/// I(x0, r), with transition band up to I(x0, omega*r):
///   s     = log(4d) / ((omega-1) r)
///   gamma = (1/sqrt(d)) (4d)^{-diam_K/((omega-1) r)}     (p-value separator)
///   n     = ceil(-log(eps) / log 2)
///   k     = floor(sqrt(2d) (4d)^{diam_K/((omega-1) r)}) + 1
/// k is kept in log domain; when its magnitude exceeds 2^63 the floor is
/// skipped (flagged), perturbing k by < 1 part in 1e15.
struct CubeIndicatorSpec {
  HyperCube cube;
  double omega = 2.0;
  double eps = 0.1;
  double diam_K = 1.0;

  double s = 0.0;
  LogValue gamma;
  int n = 1;
  LogValue k;
  bool k_floor_skipped = false;

  int dim() const { return cube.dim(); }
};

CubeIndicatorSpec make_spec(const HyperCube& cube, double omega, double eps, double diam_K);

/// p(x) = (1/2d) sum_i [ e^{s(-x_i + (x0_i - (r+wr)/2) - diam_K)}
///                     + e^{s( x_i - (x0_i + (r+wr)/2) - diam_K)} ],
/// summed in log domain. Always non-negative (sign +1).
LogValue eval_p(const CubeIndicatorSpec& spec, std::span<const double> x);

struct IndicatorValue {
  double value = 0.0;
  double log_value = 0.0;      // natural log of g; -inf when g = 0
  bool outside_range = false;  // p >= 1, base nonpositive: clamped to 0
};

/// g(x) = (1 - p(x)^n)^{k^n} through the stable log kernel. Accepts an
/// explicit k (test-scale override of the astronomically large formula k).
IndicatorValue eval_g(const CubeIndicatorSpec& spec, std::span<const double> x,
                      std::optional<double> log_k_override = std::nullopt);

/// Verification of the raw per-coordinate sums behind the construction:
/// inside I(x0,r) the (4d)-power sum must be <= sqrt(d), outside I(x0, omega r)
/// it must be > 2 sqrt(d). These are theorem-true and checked with 1e-12
/// relative slack; every violation is reported with its witness point.
struct MembershipReport {
  std::size_t inside_checked = 0;
  std::size_t outside_checked = 0;
  std::vector<std::vector<double>> inside_violations;
  std::vector<std::vector<double>> outside_violations;
  bool clean() const { return inside_violations.empty() && outside_violations.empty(); }
};

double membership_sum(const CubeIndicatorSpec& spec, std::span<const double> y);
MembershipReport check_membership_inequalities(
    const CubeIndicatorSpec& spec,
    const std::vector<std::vector<double>>& samples_inside,
    const std::vector<std::vector<double>>& samples_outside);

/// Unit-count bound for one cube indicator:
/// h = (2e/d)^d ((2/eps)^{[4 + (3/2)log2 d] diam_K/((omega-1) r)} + 1)^d.
LogValue lemma1_unit_bound(int d, double eps, double diam_K, double omega, double r);

struct ExpandedIndicator {
  ExpNetwork net;
  SymbolicExpSum sum;
  bool k_overridden = false;
};

/// Full multinomial expansion of g over the integer exponent lattice.
/// Realistic k values make this astronomically infeasible, so an explicit
/// small k can be supplied; the override is flagged in the result.
/// Guard: n*k^n <= 1e4 and the implied lattice has <= 1e6 entries.
ExpandedIndicator expand_indicator(const CubeIndicatorSpec& spec,
                                   std::optional<std::uint64_t> k_override = std::nullopt);

}  // namespace swsynth
