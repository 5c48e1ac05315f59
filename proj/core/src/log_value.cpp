#include "swsynth/log_value.hpp"

#include <cmath>
#include <limits>

namespace swsynth {

LogValue LogValue::from_real(double v) {
  if (v == 0.0) return zero();
  return {v > 0.0 ? +1 : -1, std::log(std::abs(v))};
}

LogValue LogValue::from_log(int sign, double log_abs) {
  if (sign == 0) return zero();
  if (sign != 1 && sign != -1) throw std::invalid_argument("LogValue sign must be -1, 0 or +1");
  return {sign, log_abs};
}

double LogValue::to_real() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

LogValue operator*(const LogValue& a, const LogValue& b) {
  if (a.sign == 0 || b.sign == 0) return LogValue::zero();
  return {a.sign * b.sign, a.log_abs + b.log_abs};
}

SignedSum lv_sum(std::span<const LogValue> terms) {
  double max_log = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (t.sign != 0 && t.log_abs > max_log) max_log = t.log_abs;
  if (!std::isfinite(max_log)) return {LogValue::zero(), false};

  // Kahan-compensated sum of signed ratios exp(log_abs - max_log).
  double acc = 0.0, comp = 0.0;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    double x = t.sign * std::exp(t.log_abs - max_log);
    double y = x - comp;
    double s = acc + y;
    comp = (s - acc) - y;
    acc = s;
  }

  bool degraded = std::abs(acc) < 1e-12;
  if (acc == 0.0) return {LogValue::zero(), degraded};
  return {LogValue{acc > 0.0 ? +1 : -1, max_log + std::log(std::abs(acc))}, degraded};
}

SignedSum lv_sum(std::initializer_list<LogValue> terms) {
  return lv_sum(std::span<const LogValue>(terms.begin(), terms.size()));
}

double log_one_minus_pn_pow_kn(const LogValue& log_p, int n, double log_k) {
  if (log_p.sign < 0) throw std::invalid_argument("p must be non-negative");
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (log_p.sign == 0) return 0.0;

  double n_log_p = n * log_p.log_abs;
  if (n_log_p >= 0.0) return -std::numeric_limits<double>::infinity();  // p >= 1

  double n_log_k = n * log_k;
  if (n_log_p <= -40.0) return -std::exp(n_log_k + n_log_p);
  return std::exp(n_log_k) * std::log1p(-std::exp(n_log_p));
}

}  // namespace swsynth
