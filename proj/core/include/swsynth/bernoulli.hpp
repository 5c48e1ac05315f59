#pragma once

#include <string>
#include <vector>

#include "swsynth/log_value.hpp"

namespace swsynth {

/// Parameters of the gap amplification (1-a^n)^{k^n} vs (1-b^n)^{k^n}:
///   n = ceil(-log(eps)/log 2),  k = floor(1/beta) + 1.
/// Requires alpha < beta and 1/alpha - 1/beta > 1.
struct GapParams {
  double eps = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  int n = 1;
  long long k = 2;
  bool k_bracket_holds = false;  // 1/beta < k < 1/alpha
};

GapParams derive_gap_params(double eps, double alpha, double beta);

/// Both sides of the gap claim, evaluated at concrete a in [0, alpha) and
/// b in [beta, 1]. The claims are recorded as data, never enforced: the
/// lower claim can fail for admissible inputs.
struct GapAuditReport {
  GapParams params;
  double a = 0.0;
  double b = 0.0;
  double lower_value = 0.0;  // (1-a^n)^{k^n}
  double upper_value = 0.0;  // (1-b^n)^{k^n}
  bool lower_claim_holds = false;  // lower_value > 1 - eps
  bool upper_claim_holds = false;  // upper_value < eps
};

GapAuditReport audit_gap(const GapParams& params, double a, double b);

/// Deterministic sweep over a parameter grid. Every cell is audited at the
/// worst admissible points a = (1-1e-6) alpha, b = (1+1e-6) beta plus
/// `samples_per_cell` uniform draws (fixed seed).
struct GapSweepCell {
  double eps, alpha, beta;
};
std::vector<GapAuditReport> sweep_gap(const std::vector<double>& eps_grid,
                                      const std::vector<std::pair<double, double>>& alpha_beta_grid,
                                      int samples_per_cell, std::uint64_t seed = 0);

/// CSV with header eps,alpha,beta,n,k,a,b,lower_value,upper_value,lower_holds,upper_holds.
std::string gap_reports_to_csv(const std::vector<GapAuditReport>& reports);

}  // namespace swsynth
