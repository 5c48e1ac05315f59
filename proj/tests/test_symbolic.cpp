#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "oracle.hpp"
#include "swsynth/combinatorics.hpp"
#include "swsynth/symbolic.hpp"

using namespace swsynth;

namespace {

SymbolicExpSum three_term_1d(double s) {
  SymbolicExpSum sum;
  sum.dim = 1;
  sum.scale = s;
  sum.terms[{-1}] = {LogValue::from_real(0.5), false};
  sum.terms[{0}] = {LogValue::from_real(0.25), false};
  sum.terms[{1}] = {LogValue::from_real(0.5), false};
  return sum;
}

// distinct sums of e exponent vectors drawn (with repetition) from the support
std::set<std::vector<int>> brute_force_support(const std::vector<std::vector<int>>& support,
                                               int e, int dim) {
  std::set<std::vector<int>> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(e), 0);
  while (true) {
    std::vector<int> z(static_cast<std::size_t>(dim), 0);
    for (auto p : pick)
      for (std::size_t j = 0; j < z.size(); ++j) z[j] += support[p][j];
    out.insert(z);
    int i = e - 1;
    while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == support.size()) {
      pick[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace

TEST_CASE("pow_expand basics") {
  SymbolicExpSum one;
  one.dim = 1;
  one.scale = 1.0;
  one.terms[{0}] = {LogValue::one(), false};
  auto p = pow_expand(one, 7);
  REQUIRE(p.term_count() == 1);
  CHECK(p.terms.at({0}).value.sign == 1);
  CHECK(p.terms.at({0}).value.log_abs == doctest::Approx(0.0));

  SymbolicExpSum cosh2;
  cosh2.dim = 1;
  cosh2.scale = 1.0;
  cosh2.terms[{-1}] = {LogValue::one(), false};
  cosh2.terms[{1}] = {LogValue::one(), false};
  auto sq = pow_expand(cosh2, 2);
  REQUIRE(sq.term_count() == 3);
  CHECK(std::exp(sq.terms.at({-2}).value.log_abs) == doctest::Approx(1.0));
  CHECK(std::exp(sq.terms.at({0}).value.log_abs) == doctest::Approx(2.0));
  CHECK(std::exp(sq.terms.at({2}).value.log_abs) == doctest::Approx(1.0));
}

TEST_CASE("pow_expand support bound") {
  SymbolicExpSum base;
  base.dim = 2;
  base.scale = 0.7;
  base.terms[{0, 0}] = {LogValue::from_real(0.1), false};
  base.terms[{1, 0}] = {LogValue::from_real(0.2), false};
  base.terms[{-1, 0}] = {LogValue::from_real(0.3), false};
  base.terms[{0, 1}] = {LogValue::from_real(0.4), false};
  base.terms[{0, -1}] = {LogValue::from_real(0.5), false};
  for (int n : {1, 2, 3, 4}) {
    auto p = pow_expand(base, static_cast<std::uint64_t>(n));
    for (const auto& [z, c] : p.terms) {
      int l1 = std::abs(z[0]) + std::abs(z[1]);
      CHECK(l1 <= n);
    }
    auto bound = multinomial_power_bound(n, 2);
    CHECK(std::log(static_cast<double>(p.term_count())) < bound.tight.log_abs);
    CHECK(p.term_count() == lattice_l1_count(n, 2).exact);
  }
}

TEST_CASE("pow_expand support equals brute-force distinct sums") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uc(0.1, 2.0);
  for (int dim = 1; dim <= 2; ++dim)
    for (int e = 1; e <= 6; ++e) {
      SymbolicExpSum base;
      base.dim = dim;
      base.scale = 1.0;
      std::vector<std::vector<int>> support;
      support.push_back(std::vector<int>(static_cast<std::size_t>(dim), 0));
      for (int j = 0; j < dim; ++j) {
        auto plus = support[0];
        plus[static_cast<std::size_t>(j)] = 1;
        auto minus = support[0];
        minus[static_cast<std::size_t>(j)] = -1;
        support.push_back(plus);
        support.push_back(minus);
      }
      for (const auto& z : support) base.terms[z] = {LogValue::from_real(uc(rng)), false};
      auto p = pow_expand(base, static_cast<std::uint64_t>(e));
      auto want = brute_force_support(support, e, dim);
      REQUIRE(p.term_count() == want.size());
      for (const auto& [z, c] : p.terms) CHECK(want.count(z) == 1);
    }
}

TEST_CASE("pow_expand exponent additivity at probes") {
  auto base = three_term_1d(0.8);
  auto p5 = pow_expand(base, 5);
  auto p2 = pow_expand(base, 2);
  auto p3 = pow_expand(base, 3);
  auto prod = multiply(p2, p3);
  for (int i = 0; i < 100; ++i) {
    double x = -1.0 + 2.0 * i / 99.0;
    std::vector<double> pt{x};
    double a = p5.eval(pt);
    double b = prod.eval(pt);
    CHECK(oracle::rel_err(b, a) <= 1e-9);
  }
}

TEST_CASE("multiply collects terms and drops exact zeros") {
  SymbolicExpSum a;
  a.dim = 1;
  a.scale = 1.0;
  a.terms[{0}] = {LogValue::one(), false};
  a.terms[{1}] = {LogValue::one(), false};
  SymbolicExpSum b;
  b.dim = 1;
  b.scale = 1.0;
  b.terms[{0}] = {LogValue::one(), false};
  b.terms[{1}] = {LogValue::one().negated(), false};
  // (1 + e^x)(1 - e^x) = 1 - e^{2x}: the e^x terms cancel exactly
  auto p = multiply(a, b);
  REQUIRE(p.term_count() == 2);
  CHECK(p.terms.count({1}) == 0);
  CHECK(p.terms.at({0}).value.sign == 1);
  CHECK(p.terms.at({2}).value.sign == -1);
}

TEST_CASE("affine_combine") {
  SymbolicExpSum one;
  one.dim = 1;
  one.scale = 1.0;
  one.terms[{0}] = {LogValue::one(), false};
  CHECK(affine_combine(-1.0, one, 1.0).term_count() == 0);

  SymbolicExpSum empty;
  empty.dim = 1;
  empty.scale = 1.0;
  auto c = affine_combine(1.0, empty, 1.0);
  REQUIRE(c.term_count() == 1);
  CHECK(c.terms.at({0}).value.sign == 1);

  SymbolicExpSum s;
  s.dim = 1;
  s.scale = 1.0;
  s.terms[{1}] = {LogValue::from_real(0.7), false};
  auto r = affine_combine(-1.0, s, 1.0);
  REQUIRE(r.term_count() == 2);
  CHECK(r.terms.at({0}).value.sign == 1);
  CHECK(r.terms.at({1}).value.sign == -1);
  CHECK(std::exp(r.terms.at({1}).value.log_abs) == doctest::Approx(0.7));
}

TEST_CASE("to_network matches symbolic evaluation") {
  SymbolicExpSum empty;
  empty.dim = 2;
  empty.scale = 1.0;
  CHECK(to_network(empty).units.empty());

  SymbolicExpSum constant;
  constant.dim = 2;
  constant.scale = 1.0;
  constant.terms[{0, 0}] = {LogValue::from_real(5.0), false};
  auto cnet = to_network(constant);
  REQUIRE(cnet.units.size() == 1);
  CHECK(eval_network(cnet, std::vector<double>{0.3, 0.4}) == doctest::Approx(5.0));

  auto s = three_term_1d(1.3);
  auto net = to_network(s);
  REQUIRE(net.units.size() == 3);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x{ux(rng)};
    CHECK(oracle::rel_err(eval_network(net, x), s.eval(x)) <= 1e-9);
  }
}

TEST_CASE("pow_expand guard rejects blow-up") {
  SymbolicExpSum base;
  base.dim = 2;
  base.scale = 1.0;
  base.terms[{0, 0}] = {LogValue::one(), false};
  base.terms[{1, 0}] = {LogValue::one(), false};
  base.terms[{-1, 0}] = {LogValue::one(), false};
  base.terms[{0, 1}] = {LogValue::one(), false};
  base.terms[{0, -1}] = {LogValue::one(), false};
  CHECK_THROWS_AS(pow_expand(base, 100000), std::invalid_argument);
}
