#include "swsynth/symbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace swsynth {

double SymbolicExpSum::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim)
    throw std::invalid_argument("SymbolicExpSum::eval: dimension mismatch");
  std::vector<LogValue> parts;
  parts.reserve(terms.size());
  for (const auto& [z, c] : terms) {
    if (c.value.sign == 0) continue;
    double arg = 0.0;
    for (int i = 0; i < dim; ++i) arg += scale * z[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    parts.push_back(LogValue{c.value.sign, c.value.log_abs + arg});
  }
  return lv_sum(parts).value.to_real();
}

SymbolicExpSum multiply(const SymbolicExpSum& a, const SymbolicExpSum& b) {
  if (a.dim != b.dim || a.scale != b.scale)
    throw std::invalid_argument("multiply: dim/scale mismatch");

  std::map<std::vector<int>, std::pair<std::vector<LogValue>, bool>> acc;
  std::vector<int> key(static_cast<std::size_t>(a.dim));
  for (const auto& [za, ca] : a.terms) {
    for (const auto& [zb, cb] : b.terms) {
      for (int i = 0; i < a.dim; ++i)
        key[static_cast<std::size_t>(i)] =
            za[static_cast<std::size_t>(i)] + zb[static_cast<std::size_t>(i)];
      auto& slot = acc[key];
      slot.first.push_back(ca.value * cb.value);
      slot.second = slot.second || ca.degraded || cb.degraded;
    }
  }

  SymbolicExpSum out;
  out.dim = a.dim;
  out.scale = a.scale;
  for (auto& [z, slot] : acc) {
    SignedSum s = lv_sum(slot.first);
    if (s.value.sign == 0) continue;  // exact cancellation, drop
    out.terms.emplace(z, SymbolicCoeff{s.value, slot.second || s.degraded});
  }
  return out;
}

namespace {

long max_l1_radius(const SymbolicExpSum& s) {
  long r = 0;
  for (const auto& [z, c] : s.terms) {
    long m = 0;
    for (int zi : z) m += std::abs(zi);
    r = std::max(r, m);
  }
  return r;
}

// Loose estimate of |{z : |z|_1 <= n}| in d dims, in doubles.
double l1_count_estimate(long n, int d) {
  return std::exp(d * std::log(2.0) +
                  (n + d) * std::log(static_cast<double>(n + d)) -
                  (n > 0 ? n * std::log(static_cast<double>(n)) : 0.0) -
                  d * std::log(static_cast<double>(d)));
}

}  // namespace

SymbolicExpSum pow_expand(const SymbolicExpSum& base, std::uint64_t e) {
  if (e == 0) throw std::invalid_argument("pow_expand: exponent must be positive");
  long radius = max_l1_radius(base);
  double est = l1_count_estimate(radius * static_cast<long>(e), base.dim);
  if (est > 1e6) throw std::invalid_argument("pow_expand: expansion infeasible at these parameters");

  SymbolicExpSum result;
  SymbolicExpSum sq = base;
  bool have_result = false;
  for (std::uint64_t bits = e; bits != 0; bits >>= 1) {
    if (bits & 1) {
      result = have_result ? multiply(result, sq) : sq;
      have_result = true;
    }
    if (bits > 1) sq = multiply(sq, sq);
  }
  return result;
}

SymbolicExpSum affine_combine(double a, const SymbolicExpSum& s, double b) {
  SymbolicExpSum out;
  out.dim = s.dim;
  out.scale = s.scale;
  LogValue la = LogValue::from_real(a);
  for (const auto& [z, c] : s.terms) {
    LogValue v = la * c.value;
    if (v.sign == 0) continue;
    out.terms.emplace(z, SymbolicCoeff{v, c.degraded});
  }
  if (b != 0.0) {
    std::vector<int> zero(static_cast<std::size_t>(s.dim), 0);
    auto it = out.terms.find(zero);
    if (it == out.terms.end()) {
      out.terms.emplace(std::move(zero), SymbolicCoeff{LogValue::from_real(b), false});
    } else {
      SignedSum sum = lv_sum({it->second.value, LogValue::from_real(b)});
      if (sum.value.sign == 0) {
        out.terms.erase(it);
      } else {
        it->second.value = sum.value;
        it->second.degraded = it->second.degraded || sum.degraded;
      }
    }
  }
  return out;
}

ExpNetwork to_network(const SymbolicExpSum& s) {
  ExpNetwork net;
  net.dim = s.dim;
  net.transfer = Transfer::exp;
  for (const auto& [z, c] : s.terms) {
    if (c.value.sign == 0) continue;
    std::vector<double> w(static_cast<std::size_t>(s.dim));
    for (int i = 0; i < s.dim; ++i) w[static_cast<std::size_t>(i)] = s.scale * z[static_cast<std::size_t>(i)];
    net.units.push_back({c.value, std::move(w), 0.0});
  }
  return net;
}

}  // namespace swsynth
