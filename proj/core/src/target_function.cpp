#include "swsynth/target_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swsynth {

namespace {

void require_dim(const HyperCube& domain, const std::vector<double>& v, const char* what) {
  if (static_cast<int>(v.size()) != domain.dim())
    throw std::invalid_argument(std::string(what) + ": length must match domain dimension");
}

}  // namespace

TargetFunction TargetFunction::constant(HyperCube domain, double value) {
  TargetFunction f;
  f.kind_ = Kind::constant;
  f.domain_ = std::move(domain);
  f.p0_ = value;
  return f;
}

TargetFunction TargetFunction::linear(HyperCube domain, std::vector<double> coeffs, double offset) {
  require_dim(domain, coeffs, "linear coeffs");
  TargetFunction f;
  f.kind_ = Kind::linear;
  f.domain_ = std::move(domain);
  f.vec_ = std::move(coeffs);
  f.p0_ = offset;
  return f;
}

TargetFunction TargetFunction::gaussian_bump(HyperCube domain, double amplitude, double sigma,
                                             std::vector<double> center) {
  require_dim(domain, center, "gaussian center");
  if (sigma <= 0.0) throw std::invalid_argument("gaussian sigma must be positive");
  TargetFunction f;
  f.kind_ = Kind::gaussian_bump;
  f.domain_ = std::move(domain);
  f.p0_ = amplitude;
  f.p1_ = sigma;
  f.vec_ = std::move(center);
  return f;
}

TargetFunction TargetFunction::sin_product(HyperCube domain, double amplitude, double freq) {
  TargetFunction f;
  f.kind_ = Kind::sin_product;
  f.domain_ = std::move(domain);
  f.p0_ = amplitude;
  f.p1_ = freq;
  return f;
}

TargetFunction TargetFunction::runge(HyperCube domain, double sharpness, std::vector<double> center) {
  require_dim(domain, center, "runge center");
  if (sharpness <= 0.0) throw std::invalid_argument("runge sharpness must be positive");
  TargetFunction f;
  f.kind_ = Kind::runge;
  f.domain_ = std::move(domain);
  f.p0_ = sharpness;
  f.vec_ = std::move(center);
  return f;
}

std::string TargetFunction::kind_name() const {
  switch (kind_) {
    case Kind::constant: return "constant";
    case Kind::linear: return "linear";
    case Kind::gaussian_bump: return "gaussian_bump";
    case Kind::sin_product: return "sin_product";
    case Kind::runge: return "runge";
    case Kind::sampled: return "sampled";
  }
  return "?";
}

double TargetFunction::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim())
    throw std::invalid_argument("TargetFunction::eval: dimension mismatch");
  switch (kind_) {
    case Kind::constant:
      return p0_;
    case Kind::linear: {
      double s = p0_;
      for (std::size_t i = 0; i < vec_.size(); ++i) s += vec_[i] * x[i];
      return s;
    }
    case Kind::gaussian_bump: {
      double q = 0.0;
      for (std::size_t i = 0; i < vec_.size(); ++i) q += (x[i] - vec_[i]) * (x[i] - vec_[i]);
      return p0_ * std::exp(-q / (2.0 * p1_ * p1_));
    }
    case Kind::sin_product: {
      double s = p0_;
      for (double xi : x) s *= std::sin(p1_ * xi);
      return s;
    }
    case Kind::runge: {
      double q = 0.0;
      for (std::size_t i = 0; i < vec_.size(); ++i) q += (x[i] - vec_[i]) * (x[i] - vec_[i]);
      return 1.0 / (1.0 + p0_ * q);
    }
    case Kind::sampled: {
      // Multilinear interpolation on the regular grid, clamped to the box.
      int d = dim();
      std::vector<std::size_t> lo(static_cast<std::size_t>(d));
      std::vector<double> t(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        const auto& ax = axes_[static_cast<std::size_t>(i)];
        double xi = std::clamp(x[static_cast<std::size_t>(i)], ax.front(), ax.back());
        auto it = std::upper_bound(ax.begin(), ax.end(), xi);
        std::size_t hi = std::min<std::size_t>(
            std::max<std::ptrdiff_t>(1, it - ax.begin()), ax.size() - 1);
        lo[static_cast<std::size_t>(i)] = hi - 1;
        double a = ax[hi - 1], b = ax[hi];
        t[static_cast<std::size_t>(i)] = b > a ? (xi - a) / (b - a) : 0.0;
      }
      double acc = 0.0;
      for (unsigned corner = 0; corner < (1u << d); ++corner) {
        double w = 1.0;
        std::size_t flat = 0;
        for (int i = 0; i < d; ++i) {
          bool up = (corner >> i) & 1u;
          w *= up ? t[static_cast<std::size_t>(i)] : 1.0 - t[static_cast<std::size_t>(i)];
          flat = flat * axes_[static_cast<std::size_t>(i)].size() +
                 lo[static_cast<std::size_t>(i)] + (up ? 1 : 0);
        }
        acc += w * values_[flat];
      }
      return acc;
    }
  }
  throw std::logic_error("unknown kind");
}

std::optional<double> TargetFunction::closed_form_inverse_modulus(double eps) const {
  double diam = domain_.diameter();
  switch (kind_) {
    case Kind::constant:
      return diam;  // any delta works; clamp to diam K
    case Kind::linear: {
      double norm2 = 0.0;
      for (double c : vec_) norm2 += c * c;
      if (norm2 == 0.0) return diam;
      // |f(y)-f(y')| <= |w| |y-y'|, tight along w: delta = eps / |w|
      return std::min(diam, eps / std::sqrt(norm2));
    }
    default:
      return std::nullopt;
  }
}

TargetFunction TargetFunction::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 2 || header.back() != "value")
    throw std::runtime_error("CSV header must be x1,...,xd,value; last column is '" +
                             (header.empty() ? std::string() : header.back()) + "'");
  int d = static_cast<int>(header.size()) - 1;
  for (int i = 0; i < d; ++i) {
    std::string expected = "x" + std::to_string(i + 1);
    if (header[static_cast<std::size_t>(i)] != expected)
      throw std::runtime_error("CSV header column " + std::to_string(i + 1) + " must be '" +
                               expected + "', got '" + header[static_cast<std::size_t>(i)] + "'");
  }

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != header.size())
      throw std::runtime_error("CSV row " + std::to_string(line_no) + " has wrong column count");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("CSV has no data rows: " + path);

  TargetFunction f;
  f.kind_ = Kind::sampled;
  f.axes_.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::vector<double> ax;
    for (const auto& r : rows) ax.push_back(r[static_cast<std::size_t>(i)]);
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
    if (ax.size() < 2) throw std::runtime_error("CSV axis x" + std::to_string(i + 1) +
                                                " needs at least 2 distinct coordinates");
    f.axes_[static_cast<std::size_t>(i)] = std::move(ax);
  }

  std::size_t expected = 1;
  for (const auto& ax : f.axes_) expected *= ax.size();
  if (rows.size() != expected)
    throw std::runtime_error("CSV is not a full regular grid: expected " +
                             std::to_string(expected) + " rows, got " + std::to_string(rows.size()));

  f.values_.assign(expected, 0.0);
  std::vector<bool> seen(expected, false);
  for (const auto& r : rows) {
    std::size_t flat = 0;
    for (int i = 0; i < d; ++i) {
      const auto& ax = f.axes_[static_cast<std::size_t>(i)];
      auto it = std::lower_bound(ax.begin(), ax.end(), r[static_cast<std::size_t>(i)]);
      flat = flat * ax.size() + static_cast<std::size_t>(it - ax.begin());
    }
    if (seen[flat]) throw std::runtime_error("CSV contains a duplicate grid point");
    seen[flat] = true;
    f.values_[flat] = r.back();
  }

  // Domain is the grid bounding box; HyperCube requires equal extents.
  double extent = f.axes_[0].back() - f.axes_[0].front();
  std::vector<double> center(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const auto& ax = f.axes_[static_cast<std::size_t>(i)];
    double e = ax.back() - ax.front();
    if (std::abs(e - extent) > 1e-9 * std::max(1.0, extent))
      throw std::runtime_error("CSV grid bounding box must be a cube (equal extent per axis)");
    center[static_cast<std::size_t>(i)] = 0.5 * (ax.front() + ax.back());
  }
  f.domain_ = HyperCube{std::move(center), extent / 2.0};
  return f;
}

}  // namespace swsynth
