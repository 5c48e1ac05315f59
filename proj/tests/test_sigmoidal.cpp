#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "swsynth/sigmoidal.hpp"

using namespace swsynth;

namespace {

double sigma_of(Transfer kind, double z) {
  switch (kind) {
    case Transfer::step: return z >= 0.0 ? 1.0 : 0.0;
    case Transfer::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Transfer::relu: return z > 0.0 ? z : 0.0;
    default: return 0.0;
  }
}

double eval_1d(const Exp1DApproximation& a, double t) {
  double s = 0.0;
  for (const auto& u : a.units) s += u.alpha * sigma_of(a.kind, u.beta * t - u.gamma);
  return s;
}

double probe_err_1d(const Exp1DApproximation& a, double c) {
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double t = a.lo + (a.hi - a.lo) * i / 9999.0;
    worst = std::max(worst, std::abs(c * std::exp(t) - eval_1d(a, t)));
  }
  return worst;
}

}  // namespace

TEST_CASE("step staircase example: c=1, M=1, tol=0.1") {
  auto a = approximate_exp_1d(1.0, 1.0, 0.1, Transfer::step);
  CHECK(a.units.size() == 24);  // floor((e - 1/e)/0.1) jumps + 1 base unit
  CHECK(a.achieved_err <= 0.1);
  CHECK(probe_err_1d(a, 1.0) <= 0.1 + 1e-12);
}

TEST_CASE("zero coefficient gives an empty approximation") {
  auto a = approximate_exp_1d(0.0, 1.0, 0.1, Transfer::step);
  CHECK(a.units.empty());
  CHECK(a.achieved_err == 0.0);
}

TEST_CASE("relu piecewise-linear approximant") {
  auto a = approximate_exp_1d(1.0, 1.0, 0.1, Transfer::relu);
  CHECK(a.achieved_err <= 0.1);
  CHECK(probe_err_1d(a, 1.0) <= 0.1 + 1e-12);
}

TEST_CASE("sigmoid staircase sharpens until the budget fits") {
  auto a = approximate_exp_1d(1.0, 1.0, 0.1, Transfer::sigmoid);
  CHECK(a.achieved_err <= 0.1);
  CHECK(probe_err_1d(a, 1.0) <= 0.1 + 1e-12);
}

TEST_CASE("negative coefficients mirror the staircase") {
  for (auto kind : {Transfer::step, Transfer::relu, Transfer::sigmoid}) {
    auto a = approximate_exp_1d(-2.0, 1.0, 0.15, kind);
    CHECK(probe_err_1d(a, -2.0) <= 0.15 + 1e-12);
  }
}

TEST_CASE("step staircase is monotone where the target is") {
  auto a = approximate_exp_1d(1.0, 1.0, 0.1, Transfer::step);
  double prev = -1e300;
  for (int i = 0; i < 2000; ++i) {
    double t = -1.0 + 2.0 * i / 1999.0;
    double v = eval_1d(a, t);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(approximate_exp_1d(1.0, 1.0, -0.1, Transfer::step), std::invalid_argument);
  CHECK_THROWS_AS(approximate_exp_1d(1.0, -1.0, 0.1, Transfer::step), std::invalid_argument);
  CHECK_THROWS_AS(approximate_exp_1d(1.0, 1.0, 0.1, Transfer::exp), std::invalid_argument);
  CHECK_THROWS_AS(approximate_exp_1d(1.0, 1.0, 1e-9, Transfer::step), std::invalid_argument);
}

TEST_CASE("lift of an empty network") {
  ExpNetwork net;
  net.dim = 2;
  auto lifted = lift_to_two_layer(net, HyperCube{{0.5, 0.5}, 0.5}, 0.2, Transfer::step);
  CHECK(lifted.net.units.empty());
  CHECK(lifted.units_per_source.empty());
}

TEST_CASE("lift of a constant unit needs a single step unit") {
  ExpNetwork net;
  net.dim = 2;
  net.units.push_back({LogValue::from_real(1.5), {0.0, 0.0}, 0.0});
  auto lifted = lift_to_two_layer(net, HyperCube{{0.5, 0.5}, 0.5}, 0.2, Transfer::step);
  REQUIRE(lifted.units_per_source.size() == 1);
  CHECK(lifted.units_per_source[0] == 1);
  CHECK(eval_network(lifted.net, std::vector<double>{0.3, 0.8}) ==
        doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("two-unit lift stays within the eps/2 budget") {
  ExpNetwork net;
  net.dim = 2;
  net.units.push_back({LogValue::from_real(0.8), {1.0, -0.5}, 0.1});
  net.units.push_back({LogValue::from_real(-0.6), {0.3, 0.7}, -0.2});
  HyperCube K{{0.5, 0.5}, 0.5};
  double eps = 0.2;

  for (auto kind : {Transfer::step, Transfer::sigmoid, Transfer::relu}) {
    auto lifted = lift_to_two_layer(net, K, eps, kind);
    REQUIRE(lifted.units_per_source.size() == 2);
    CHECK(lifted.net.units.size() == lifted.units_per_source[0] + lifted.units_per_source[1]);
    CHECK(lifted.budget == doctest::Approx(eps / 2.0));

    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> x{u(rng), u(rng)};
      worst = std::max(worst, std::abs(eval_network(net, x) - eval_network(lifted.net, x)));
    }
    CHECK(worst <= eps / 2.0 + 1e-12);
  }
}

TEST_CASE("lift input validation") {
  ExpNetwork net;
  net.dim = 2;
  net.transfer = Transfer::relu;
  CHECK_THROWS_AS(lift_to_two_layer(net, HyperCube{{0.0, 0.0}, 1.0}, 0.2, Transfer::step),
                  std::invalid_argument);

  ExpNetwork ok;
  ok.dim = 2;
  CHECK_THROWS_AS(lift_to_two_layer(ok, HyperCube{{0.0}, 1.0}, 0.2, Transfer::step),
                  std::invalid_argument);
  CHECK_THROWS_AS(lift_to_two_layer(ok, HyperCube{{0.0, 0.0}, 1.0}, -0.2, Transfer::step),
                  std::invalid_argument);
}
