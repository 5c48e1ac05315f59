#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "swsynth/combinatorics.hpp"
#include "swsynth/cube_indicator.hpp"
#include "swsynth/halton.hpp"

using namespace swsynth;

namespace {

CubeIndicatorSpec reference_spec() {
  // d = 2, x0 = 0, r = 0.5, omega = 2, diam_K = 2 sqrt(2), eps = 0.1
  HyperCube cube{{0.0, 0.0}, 0.5};
  return make_spec(cube, 2.0, 0.1, 2.0 * std::sqrt(2.0));
}

std::vector<std::vector<double>> inside_samples(const CubeIndicatorSpec& spec, std::size_t count,
                                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> out;
  int d = spec.dim();
  while (out.size() < count) {
    std::vector<double> y(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      y[static_cast<std::size_t>(j)] =
          spec.cube.center[static_cast<std::size_t>(j)] + spec.cube.half_width * u(rng);
    out.push_back(std::move(y));
  }
  return out;
}

std::vector<std::vector<double>> outside_samples(const CubeIndicatorSpec& spec, std::size_t count,
                                                 double box_half, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-box_half, box_half);
  std::vector<std::vector<double>> out;
  int d = spec.dim();
  while (out.size() < count) {
    std::vector<double> y(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      y[static_cast<std::size_t>(j)] = spec.cube.center[static_cast<std::size_t>(j)] + u(rng);
    if (!spec.cube.contains(y, spec.omega)) out.push_back(std::move(y));
  }
  return out;
}

}  // namespace

TEST_CASE("HyperCube membership and diameter") {
  HyperCube c{{1.0, -1.0}, 0.5};
  CHECK(c.contains(std::vector<double>{1.0, -1.0}));
  CHECK(c.contains(std::vector<double>{1.5, -0.5}));
  CHECK(!c.contains(std::vector<double>{1.6, -1.0}));
  CHECK(c.contains(std::vector<double>{2.0, -1.0}, 2.0));
  CHECK(c.diameter() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("make_spec derived fields") {
  auto spec = reference_spec();
  CHECK(spec.s == doctest::Approx(std::log(8.0) / 0.5).epsilon(1e-12));
  double log_gamma_want = oracle::log_gamma_sep(2, 2.0 * std::sqrt(2.0), 2.0, 0.5);
  CHECK(spec.gamma.sign == 1);
  CHECK(spec.gamma.log_abs == doctest::Approx(log_gamma_want).epsilon(1e-12));
  CHECK(std::exp(spec.gamma.log_abs) == doctest::Approx(5.44e-6).epsilon(0.01));
  CHECK(spec.n == 4);
  // k = floor(sqrt(2d) (4d)^{diam/((omega-1)r)}) + 1, small enough to floor
  double k_unfloored = 2.0 * std::pow(8.0, 4.0 * std::sqrt(2.0));
  double k_want = std::floor(k_unfloored) + 1.0;
  CHECK(spec.k.log_abs == doctest::Approx(std::log(k_want)).epsilon(1e-12));
  CHECK(!spec.k_floor_skipped);

  CHECK_THROWS_AS(make_spec(HyperCube{{0.0}, 0.5}, 1.0, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_spec(HyperCube{{0.0}, 0.5}, 2.0, 1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_spec(HyperCube{{0.0}, 0.5}, 2.0, 0.1, -1.0), std::invalid_argument);
}

TEST_CASE("huge k skips the floor with a flag") {
  HyperCube cube{{0.0, 0.0}, 0.01};
  auto spec = make_spec(cube, 2.0, 0.1, 2.0 * std::sqrt(2.0));
  CHECK(spec.k_floor_skipped);
  CHECK(spec.k.log_abs > 64.0 * std::log(2.0));
}

TEST_CASE("eval_p at the center of the reference spec") {
  auto spec = reference_spec();
  auto p = eval_p(spec, std::vector<double>{0.0, 0.0});
  CHECK(p.sign == 1);
  // all four summands equal exp(-s(0.75 + 2 sqrt 2))
  double want = std::exp(-spec.s * (0.75 + 2.0 * std::sqrt(2.0)));
  CHECK(std::exp(p.log_abs) == doctest::Approx(want).epsilon(1e-12));
  CHECK(std::exp(p.log_abs) == doctest::Approx(3.4e-7).epsilon(0.03));
}

TEST_CASE("p grows without bound along any axis") {
  auto spec = reference_spec();
  double prev = -1e300;
  for (double t : {2.0, 4.0, 8.0, 16.0}) {
    auto p = eval_p(spec, std::vector<double>{t, 0.0});
    CHECK(p.log_abs > prev);
    prev = p.log_abs;
  }
  CHECK(prev > 0.0);  // p far above 1 out there
}

TEST_CASE("membership sums at hand-computed points") {
  auto spec = reference_spec();
  double at_center = membership_sum(spec, std::vector<double>{0.0, 0.0});
  CHECK(at_center == doctest::Approx(4.0 * std::pow(8.0, -1.5)).epsilon(1e-12));
  CHECK(at_center <= std::sqrt(2.0));

  double far = membership_sum(spec, std::vector<double>{2.0, 0.0});
  CHECK(far > 2.0 * std::sqrt(2.0));

  // corners of I(x0, r) stay at or below sqrt(d)
  for (double sx : {-1.0, 1.0})
    for (double sy : {-1.0, 1.0}) {
      double corner = membership_sum(spec, std::vector<double>{0.5 * sx, 0.5 * sy});
      CHECK(corner <= std::sqrt(2.0) * (1.0 + 1e-12));
    }
}

TEST_CASE("membership inequalities hold on random samples, d = 1..3") {
  std::mt19937_64 seed_rng(77);
  for (int d = 1; d <= 3; ++d) {
    for (int rep = 0; rep < 3; ++rep) {
      std::uniform_real_distribution<double> uc(-1.0, 1.0);
      std::uniform_real_distribution<double> ur(0.1, 0.7);
      std::vector<double> center(static_cast<std::size_t>(d));
      for (auto& c : center) c = uc(seed_rng);
      double r = ur(seed_rng);
      double diam = 4.0 * std::sqrt(static_cast<double>(d));
      auto spec = make_spec(HyperCube{center, r}, 2.0, 0.1, diam);
      auto in = inside_samples(spec, 500, 1000 + static_cast<std::uint64_t>(rep));
      auto out = outside_samples(spec, 500, 2.0, 2000 + static_cast<std::uint64_t>(rep));
      auto report = check_membership_inequalities(spec, in, out);
      CHECK(report.clean());
      CHECK(report.inside_checked == 500);
      CHECK(report.outside_checked == 500);
    }
  }
}

TEST_CASE("p separation: gamma/2 inside, gamma outside") {
  auto spec = reference_spec();
  for (const auto& y : inside_samples(spec, 2000, 5)) {
    auto p = eval_p(spec, y);
    CHECK(p.log_abs <= spec.gamma.log_abs - std::log(2.0) + 1e-12);
  }
  for (const auto& y : outside_samples(spec, 2000, std::sqrt(2.0), 6)) {
    auto p = eval_p(spec, y);
    CHECK(p.log_abs >= spec.gamma.log_abs - 1e-12);
  }
}

TEST_CASE("eval_g identity cases and oracle pin") {
  auto spec = reference_spec();

  auto far = eval_g(spec, std::vector<double>{50.0, 50.0});
  CHECK(far.value == 0.0);
  CHECK(far.outside_range);

  auto at_center = eval_g(spec, std::vector<double>{0.0, 0.0});
  CHECK(!at_center.outside_range);
  CHECK(at_center.value >= 0.0);
  CHECK(at_center.value <= 1.0);
  auto p = eval_p(spec, std::vector<double>{0.0, 0.0});
  double want = oracle::log_g(p.log_abs, spec.n, spec.k.log_abs);
  CHECK(oracle::log_g_matches(at_center.log_value, want));
}

TEST_CASE("g decreases as p increases") {
  auto spec = reference_spec();
  double log_k = std::log(8.0);  // test-scale k
  double prev = 2.0;
  for (double p : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    auto lg = log_one_minus_pn_pow_kn(LogValue::from_real(p), spec.n, log_k);
    double g = std::exp(lg);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("lemma1_unit_bound examples") {
  // h = (2e/d)^d ((2/eps)^{[4 + 1.5 log2 d] diam/((omega-1)r)} + 1)^d
  double expo = 5.5 * std::sqrt(2.0) / 0.5;
  double want1 = std::pow(std::exp(1.0) * (std::pow(4.0, expo) + 1.0), 2.0);
  double b1 = std::exp(lemma1_unit_bound(2, 0.5, std::sqrt(2.0), 2.0, 0.5).log_abs);
  CHECK(b1 == doctest::Approx(want1).epsilon(1e-9));

  double b2 = std::exp(lemma1_unit_bound(2, 2.0 - 1e-12, std::sqrt(2.0), 2.0, 0.5).log_abs);
  CHECK(b2 == doctest::Approx(std::pow(2.0 * std::exp(1.0), 2.0)).epsilon(1e-3));

  double b3 = std::exp(lemma1_unit_bound(1, 0.5, 0.5, 2.0, 0.5).log_abs);
  CHECK(b3 == doctest::Approx(2.0 * std::exp(1.0) * (std::pow(4.0, 4.0) + 1.0)).epsilon(1e-9));
}

TEST_CASE("expand_indicator small cases") {
  // d = 1, n = 1, k = 2: (1 - p)^2 over the lattice {-2..2}
  HyperCube cube{{0.0}, 0.5};
  auto spec = make_spec(cube, 2.0, 0.6, 1.0);
  REQUIRE(spec.n == 1);
  auto ex = expand_indicator(spec, 2);
  CHECK(ex.k_overridden);
  CHECK(ex.net.units.size() == 5);
  CHECK(ex.sum.term_count() == 5);

  // d = 2, n = 1, k = 2: support within |z|_1 <= 2, at most 13 units
  HyperCube cube2{{0.0, 0.0}, 0.5};
  auto spec2 = make_spec(cube2, 2.0, 0.6, 1.0);
  auto ex2 = expand_indicator(spec2, 2);
  CHECK(ex2.net.units.size() <= 13);
  for (const auto& [z, c] : ex2.sum.terms) CHECK(std::abs(z[0]) + std::abs(z[1]) <= 2);

  CHECK_THROWS_AS(expand_indicator(reference_spec()), std::invalid_argument);
}

TEST_CASE("expanded network equals the closed form at probes") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  HyperCube cube{{0.1, -0.2}, 0.4};
  auto spec = make_spec(cube, 2.0, 0.4, 2.0);
  std::uint64_t k = 3;
  auto ex = expand_indicator(spec, k);
  double log_k = std::log(static_cast<double>(k));
  for (int i = 0; i < 100; ++i) {
    std::vector<double> y{u(rng), u(rng)};
    auto g = eval_g(spec, y, log_k);
    double net_val = eval_network(ex.net, y);
    CHECK(std::abs(net_val - g.value) <= 1e-9 * std::max(1.0, std::abs(g.value)));
  }
  // term count below the lemma-chain form (2e(n k^n / d + 1))^d
  double nkn = static_cast<double>(spec.n) * std::pow(static_cast<double>(k), spec.n);
  double bound = std::pow(2.0 * std::exp(1.0) * (nkn / 2.0 + 1.0), 2.0);
  CHECK(static_cast<double>(ex.net.units.size()) < bound);
}
