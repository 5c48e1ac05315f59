#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace swsynth {

/// Signed log-domain scalar: sign in {-1, 0, +1} and ln|v|.
/// sign == 0 is exact zero; log_abs is then meaningless.
/// Carries magnitudes (k^n, e^{sB}, ...) far beyond double range.
struct LogValue {
  int sign = 0;
  double log_abs = 0.0;

  static LogValue zero() { return {0, 0.0}; }
  static LogValue one() { return {+1, 0.0}; }
  static LogValue from_real(double v);
  static LogValue from_log(int sign, double log_abs);

  double to_real() const;
  bool is_zero() const { return sign == 0; }

  LogValue negated() const { return {-sign, log_abs}; }
};

LogValue operator*(const LogValue& a, const LogValue& b);

/// Result of a signed log-sum-exp. `degraded` is set when the compensated
/// accumulator fell below 1e-12 of the largest term magnitude, i.e. the
/// result survived catastrophic cancellation and its magnitude is unreliable.
struct SignedSum {
  LogValue value;
  bool degraded = false;
};

/// Signed log-sum-exp with sign tracking: factor out the max log_abs,
/// accumulate signed ratios with Kahan compensation, re-log.
SignedSum lv_sum(std::span<const LogValue> terms);
SignedSum lv_sum(std::initializer_list<LogValue> terms);

/// log of g = (1 - p^n)^{k^n}, with p given in log domain and k as log k.
/// Returns K * log1p(-p^n) with K = exp(n*log_k).
///
/// Branches:
///   p = 0            -> 0               (g = 1)
///   p = 1            -> -inf            (g = 0)
///   n*log p <= -40   -> -exp(n*log_k + n*log p)
///       first-order log1p(-x) ~ -x; the dropped tail is <= x^2/2,
///       a relative error < e^{-40}/2 < 3e-18, below double precision
///   otherwise        -> exp(n*log_k) * log1p(-exp(n*log p))
///
/// Throws std::invalid_argument for negative p (sign = -1).
double log_one_minus_pn_pow_kn(const LogValue& log_p, int n, double log_k);

}  // namespace swsynth
