#include "swsynth/combinatorics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace swsynth {

namespace {

// x ln x with 0 ln 0 := 0 (the 0^0 = 1 convention of the bound formulas).
double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

double log_of_bigint(const BigInt& v) {
  // Lossless under the module guards: every exact count here is < 2^53.
  double d = v.convert_to<double>();
  return std::log(d);
}

bool strictly_below(const BigInt& exact, const LogValue& bound) {
  if (exact == 0) return bound.sign > 0;
  return bound.sign > 0 && log_of_bigint(exact) < bound.log_abs;
}

bool at_most(const BigInt& exact, const LogValue& bound) {
  if (exact == 0) return bound.sign > 0;
  return bound.sign > 0 && log_of_bigint(exact) <= bound.log_abs + 1e-12;
}

}  // namespace

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

CountBoundReport robbins_binomial_check(int n, int k) {
  if (n < 2) throw std::invalid_argument("robbins_binomial_check: n must be >= 2");
  if (k < 1 || k > n) throw std::invalid_argument("robbins_binomial_check: need 1 <= k <= n");

  CountBoundReport rep;
  rep.exact = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
  double log_bound = n * std::log(static_cast<double>(n)) -
                     xlogx(static_cast<double>(n - k)) - xlogx(static_cast<double>(k));
  rep.bound = LogValue::from_log(+1, log_bound);
  // At k = n the formula degenerates to exactly C(n,n) = 1 = n^n/(0^0 n^n);
  // the inequality is non-strict at that single boundary.
  rep.holds = strictly_below(rep.exact, rep.bound) || (k == n && rep.exact == 1);
  std::ostringstream os;
  os << "n=" << n << ",k=" << k;
  rep.params = os.str();
  return rep;
}

namespace {

BigInt brute_force_l1_count(int n, int k) {
  // Enumerate z in [-n, n]^k and test the L1 condition.
  std::vector<int> z(static_cast<std::size_t>(k), -n);
  BigInt count = 0;
  while (true) {
    long sum = 0;
    for (int zi : z) sum += std::abs(zi);
    if (sum <= n) ++count;
    int i = 0;
    while (i < k && ++z[static_cast<std::size_t>(i)] > n) {
      z[static_cast<std::size_t>(i)] = -n;
      ++i;
    }
    if (i == k) break;
  }
  return count;
}

}  // namespace

CountBoundReport lattice_l1_count(int n, int k) {
  if (n < 0 || k < 1) throw std::invalid_argument("lattice_l1_count: need n >= 0, k >= 1");
  if (k > 6 || n > 64) throw std::invalid_argument("lattice_l1_count: guard k <= 6, n <= 64");

  // Signed-coordinate decomposition: choose j coordinates to be nonzero
  // (2^j sign patterns), count positive supports with the hockey stick.
  BigInt exact = 0;
  for (int j = 0; j <= k; ++j)
    exact += (BigInt(1) << j) *
             binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)) *
             binomial(static_cast<unsigned>(n), static_cast<unsigned>(j));

  BigInt upper = (BigInt(1) << k) *
                 binomial(static_cast<unsigned>(n + k), static_cast<unsigned>(k));
  if (exact > upper)
    throw std::logic_error("lattice_l1_count: closed sum exceeds the 2^k C(n+k,k) route");

  if (k <= 3 && n <= 12 && brute_force_l1_count(n, k) != exact)
    throw std::logic_error("lattice_l1_count: closed sum disagrees with enumeration");

  CountBoundReport rep;
  rep.exact = exact;
  double log_bound = k * std::log(2.0) + (n + k) * std::log(static_cast<double>(n + k)) -
                     xlogx(static_cast<double>(n)) - xlogx(static_cast<double>(k));
  rep.bound = LogValue::from_log(+1, log_bound);
  rep.holds = strictly_below(rep.exact, rep.bound);
  std::ostringstream os;
  os << "n=" << n << ",k=" << k;
  rep.params = os.str();
  return rep;
}

PowerBounds multinomial_power_bound(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("multinomial_power_bound: need n, d >= 1");
  double log_tight = d * std::log(2.0) + (n + d) * std::log(static_cast<double>(n + d)) -
                     xlogx(static_cast<double>(n)) - xlogx(static_cast<double>(d));
  double log_loose =
      d * std::log(2.0 * std::numbers::e * (static_cast<double>(n) / d + 1.0));
  return {LogValue::from_log(+1, log_tight), LogValue::from_log(+1, log_loose)};
}

namespace {

// Try to read v as a short decimal q / 10^6 (exactly, up to 1 ulp of the
// scaled value). Returns false for values that are not short decimals.
bool as_scaled_int(double v, long long& out) {
  double scaled = v * 1e6;
  double rounded = std::nearbyint(scaled);
  if (std::abs(scaled - rounded) > 1e-6 * std::max(1.0, std::abs(scaled))) return false;
  if (std::abs(rounded) > 9e15) return false;
  out = static_cast<long long>(rounded);
  return true;
}

}  // namespace

CountBoundReport lattice_ball_count(int d, double R, double rho) {
  if (d < 1 || R <= 0.0 || rho <= 0.0)
    throw std::invalid_argument("lattice_ball_count: need d >= 1, R > 0, rho > 0");
  double box = std::pow(2.0 * R / rho + 1.0, d);
  if (box > 1e7) throw std::invalid_argument("lattice_ball_count: enumeration guard exceeded");

  long long r_int = 0, rho_int = 0;
  bool exact_arith = as_scaled_int(R, r_int) && as_scaled_int(rho, rho_int);
  // Membership of z: rho^2 * sum z_i^2 <= R^2; in integers rho_int^2 * sum <= r_int^2.
  BigInt rho2 = exact_arith ? BigInt(rho_int) * rho_int : BigInt(0);
  BigInt r2 = exact_arith ? BigInt(r_int) * r_int : BigInt(0);

  int zmax = static_cast<int>(std::floor(R / rho + 1e-12));
  std::vector<int> z(static_cast<std::size_t>(d), -zmax);
  BigInt count = 0;
  while (true) {
    if (exact_arith) {
      BigInt sum = 0;
      for (int zi : z) sum += BigInt(zi) * zi;
      if (rho2 * sum <= r2) ++count;
    } else {
      double sum = 0.0;
      for (int zi : z) sum += static_cast<double>(zi) * zi;
      if (rho * rho * sum <= R * R) ++count;
    }
    int i = 0;
    while (i < d && ++z[static_cast<std::size_t>(i)] > zmax) {
      z[static_cast<std::size_t>(i)] = -zmax;
      ++i;
    }
    if (i == d) break;
  }

  CountBoundReport rep;
  rep.exact = count;
  double log_bound = 0.5 * d * std::log(std::numbers::pi) +
                     d * std::log(R + rho * std::sqrt(static_cast<double>(d)) / 2.0) -
                     std::lgamma(d / 2.0 + 1.0);
  rep.bound = LogValue::from_log(+1, log_bound);
  rep.holds = at_most(rep.exact, rep.bound);
  std::ostringstream os;
  os << "d=" << d << ",R=" << R << ",rho=" << rho;
  rep.params = os.str();
  return rep;
}

}  // namespace swsynth
