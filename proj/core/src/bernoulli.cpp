#include "swsynth/bernoulli.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "swsynth/format.hpp"

namespace swsynth {

GapParams derive_gap_params(double eps, double alpha, double beta) {
  auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_unit(eps) || !in_unit(alpha) || !in_unit(beta))
    throw std::invalid_argument("derive_gap_params: eps, alpha, beta must lie in (0,1)");
  if (!(alpha < beta)) throw std::invalid_argument("derive_gap_params: need alpha < beta");
  if (!(1.0 / alpha - 1.0 / beta > 1.0))
    throw std::invalid_argument("derive_gap_params: need 1/alpha - 1/beta > 1");

  GapParams p;
  p.eps = eps;
  p.alpha = alpha;
  p.beta = beta;
  p.n = std::max(1, static_cast<int>(std::ceil(-std::log(eps) / std::log(2.0))));
  p.k = static_cast<long long>(std::floor(1.0 / beta)) + 1;
  p.k_bracket_holds = (1.0 / beta < static_cast<double>(p.k)) &&
                      (static_cast<double>(p.k) < 1.0 / alpha);
  return p;
}

GapAuditReport audit_gap(const GapParams& params, double a, double b) {
  if (a < 0.0 || a >= params.alpha) throw std::invalid_argument("audit_gap: need a in [0, alpha)");
  if (b < params.beta || b > 1.0) throw std::invalid_argument("audit_gap: need b in [beta, 1]");

  GapAuditReport rep;
  rep.params = params;
  rep.a = a;
  rep.b = b;
  double log_k = std::log(static_cast<double>(params.k));
  rep.lower_value = std::exp(log_one_minus_pn_pow_kn(LogValue::from_real(a), params.n, log_k));
  rep.upper_value = std::exp(log_one_minus_pn_pow_kn(LogValue::from_real(b), params.n, log_k));
  rep.lower_claim_holds = rep.lower_value > 1.0 - params.eps;
  rep.upper_claim_holds = rep.upper_value < params.eps;
  return rep;
}

std::vector<GapAuditReport> sweep_gap(const std::vector<double>& eps_grid,
                                      const std::vector<std::pair<double, double>>& alpha_beta_grid,
                                      int samples_per_cell, std::uint64_t seed) {
  std::vector<GapAuditReport> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double eps : eps_grid) {
    for (auto [alpha, beta] : alpha_beta_grid) {
      GapParams p = derive_gap_params(eps, alpha, beta);
      // Worst admissible points first: just inside the open range ends.
      double a_worst = (1.0 - 1e-6) * alpha;
      double b_worst = std::min(1.0, (1.0 + 1e-6) * beta);
      out.push_back(audit_gap(p, a_worst, b_worst));
      for (int i = 0; i < samples_per_cell; ++i) {
        double a = unit(rng) * a_worst;
        double b = b_worst + unit(rng) * (1.0 - b_worst);
        out.push_back(audit_gap(p, a, b));
      }
    }
  }
  return out;
}

std::string gap_reports_to_csv(const std::vector<GapAuditReport>& reports) {
  std::ostringstream os;
  os << "eps,alpha,beta,n,k,a,b,lower_value,upper_value,lower_holds,upper_holds\n";
  for (const auto& r : reports) {
    os << format_double(r.params.eps) << ',' << format_double(r.params.alpha) << ','
       << format_double(r.params.beta) << ',' << r.params.n << ',' << r.params.k << ','
       << format_double(r.a) << ',' << format_double(r.b) << ','
       << format_double(r.lower_value) << ',' << format_double(r.upper_value) << ','
       << (r.lower_claim_holds ? 1 : 0) << ',' << (r.upper_claim_holds ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace swsynth
