#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swsynth/cube_indicator.hpp"

namespace swsynth {

/// Continuous target f on a compact cube domain K. Catalog entries carry a
/// closed-form inverse modulus of continuity where one is derivable
/// (constant, linear); the rest fall back to the sampling estimator.
class TargetFunction {
 public:
  enum class Kind { constant, linear, gaussian_bump, sin_product, runge, sampled };

  static TargetFunction constant(HyperCube domain, double value);
  static TargetFunction linear(HyperCube domain, std::vector<double> coeffs, double offset);
  /// amplitude * exp(-|x - center|^2 / (2 sigma^2))
  static TargetFunction gaussian_bump(HyperCube domain, double amplitude, double sigma,
                                      std::vector<double> center);
  /// amplitude * prod_i sin(freq * x_i)
  static TargetFunction sin_product(HyperCube domain, double amplitude, double freq);
  /// 1 / (1 + sharpness * |x - center|^2)
  static TargetFunction runge(HyperCube domain, double sharpness, std::vector<double> center);
  /// Regular grid of samples with header "x1,...,xd,value"; multilinear
  /// interpolation in between. The grid bounding box must be a cube.
  static TargetFunction from_csv(const std::string& path);

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  const HyperCube& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }

  double eval(std::span<const double> x) const;

  /// Exact inverse modulus of continuity at eps, when derivable.
  std::optional<double> closed_form_inverse_modulus(double eps) const;

 private:
  Kind kind_ = Kind::constant;
  HyperCube domain_;
  // catalog parameters
  double p0_ = 0.0, p1_ = 0.0;
  std::vector<double> vec_;
  // sampled grid
  std::vector<std::vector<double>> axes_;  // sorted coordinates per axis
  std::vector<double> values_;             // row-major over axes_
};

}  // namespace swsynth
