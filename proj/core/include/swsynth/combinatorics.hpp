#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "swsynth/log_value.hpp"

namespace swsynth {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(unsigned n, unsigned k);

/// Exact count vs. closed-form bound, compared in log domain.
/// `holds` means exact < bound strictly, except where a formula is exactly
/// tight by construction (binomial k = n) or stated non-strictly (ball count).
struct CountBoundReport {
  BigInt exact;
  LogValue bound;
  bool holds = false;
  std::string params;
};

/// C(n,k) against the Stirling-type bound n^n / ((n-k)^{n-k} k^k).
/// 0^0 := 1 at the k = n boundary. Requires n >= 2, 1 <= k <= n.
CountBoundReport robbins_binomial_check(int n, int k);

/// |{z in Z^k : sum |z_i| <= n}| against 2^k (n+k)^{n+k} / (n^n k^k).
/// Exact count via the signed-coordinate sum  sum_j 2^j C(k,j) C(n,j),
/// cross-checked against 2^k C(n+k,k) (upper count) and, for k <= 3 and
/// n <= 12, against brute-force enumeration. Guard: k <= 6, n <= 64.
CountBoundReport lattice_l1_count(int n, int k);

/// Lemma chain for the term count of p^n in d variables:
/// tight 2^d (n+d)^{n+d} / (n^n d^d), loose (2e(n/d + 1))^d.
struct PowerBounds {
  LogValue tight;
  LogValue loose;
};
PowerBounds multinomial_power_bound(int n, int d);

/// |rho Z^d intersect B(0, R)| against sqrt(pi)^d (R + rho sqrt(d)/2)^d / Gamma(d/2+1)
/// (non-strict). The bound carries no 1/rho^d volume factor, so it only
/// dominates the count when rho >= 1; `holds` reports the comparison as data.
/// Enumerates the bounding box; membership |z|*rho <= R decided with exact
/// integer arithmetic when R and rho are short decimals, so boundary lattice
/// points never flap with float rounding. Guard: (2R/rho + 1)^d <= 1e7.
CountBoundReport lattice_ball_count(int d, double R, double rho);

}  // namespace swsynth
