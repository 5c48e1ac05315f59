#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "swsynth/expnet.hpp"
#include "swsynth/log_value.hpp"

namespace swsynth {

/// Signed log-domain coefficient of one lattice-keyed exponential term.
/// `degraded` marks coefficients that went through near-total cancellation
/// in lv_sum; their support membership is exact, their magnitude is not.
struct SymbolicCoeff {
  LogValue value;
  bool degraded = false;
};

/// Finite sum  sum_z c_z e^{<s z, x>}  keyed by integer exponent vectors.
/// Keys are kept in lexicographic order (std::map), which fixes the
/// serialization and iteration order.
struct SymbolicExpSum {
  int dim = 1;
  double scale = 1.0;
  std::map<std::vector<int>, SymbolicCoeff> terms;

  std::size_t term_count() const { return terms.size(); }
  double eval(std::span<const double> x) const;
};

/// Term-collected product; coefficients accumulated via lv_sum.
SymbolicExpSum multiply(const SymbolicExpSum& a, const SymbolicExpSum& b);

/// S^e by repeated squaring with collection after every multiply.
/// Guard: estimated output support <= 1e6 terms.
SymbolicExpSum pow_expand(const SymbolicExpSum& base, std::uint64_t e);

/// a*S + b, with b entering at the zero exponent vector.
SymbolicExpSum affine_combine(double a, const SymbolicExpSum& s, double b);

/// One exp unit per entry: weight s*z, bias 0.
ExpNetwork to_network(const SymbolicExpSum& s);

}  // namespace swsynth
