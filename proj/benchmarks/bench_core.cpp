#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "swsynth/combinatorics.hpp"
#include "swsynth/cube_indicator.hpp"
#include "swsynth/expnet.hpp"
#include "swsynth/global_approx.hpp"
#include "swsynth/log_value.hpp"
#include "swsynth/symbolic.hpp"

using namespace swsynth;

namespace {

std::vector<LogValue> random_terms(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(-30.0, 30.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<LogValue> terms;
  terms.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    terms.push_back(LogValue{sign(rng) ? +1 : -1, mag(rng)});
  return terms;
}

void bm_lv_sum(benchmark::State& state) {
  auto terms = random_terms(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    auto s = lv_sum(terms);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_lv_sum)->Arg(16)->Arg(256)->Arg(4096);

void bm_stable_kernel(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> up(1e-6, 1.0 - 1e-6);
  std::uniform_real_distribution<double> ulk(0.0, 50.0);
  std::vector<std::pair<LogValue, double>> draws;
  for (int i = 0; i < 1024; ++i)
    draws.emplace_back(LogValue::from_real(up(rng)), ulk(rng));
  int n = static_cast<int>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& d = draws[i++ & 1023];
    benchmark::DoNotOptimize(log_one_minus_pn_pow_kn(d.first, n, d.second));
  }
}
BENCHMARK(bm_stable_kernel)->Arg(1)->Arg(4)->Arg(16);

void bm_eval_network(benchmark::State& state) {
  auto spec = make_spec(HyperCube{{0.0, 0.0}, 0.4}, 2.0, 0.6, 2.0);
  auto ex = expand_indicator(spec, 3);
  std::vector<double> x{0.1, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(eval_network(ex.net, x));
  state.counters["units"] = static_cast<double>(ex.net.units.size());
}
BENCHMARK(bm_eval_network);

void bm_pow_expand(benchmark::State& state) {
  auto spec = make_spec(HyperCube{{0.0, 0.0}, 0.4}, 2.0, 0.6, 2.0);
  std::uint64_t k = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto ex = expand_indicator(spec, k);
    benchmark::DoNotOptimize(ex.sum.terms.size());
  }
}
BENCHMARK(bm_pow_expand)->Arg(2)->Arg(4)->Arg(8);

void bm_lattice_l1_count(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rep = lattice_l1_count(n, 3);
    benchmark::DoNotOptimize(rep.holds);
  }
}
BENCHMARK(bm_lattice_l1_count)->Arg(8)->Arg(32)->Arg(64);

void bm_lattice_ball_count(benchmark::State& state) {
  double R = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto rep = lattice_ball_count(2, R, 1.0);
    benchmark::DoNotOptimize(rep.holds);
  }
}
BENCHMARK(bm_lattice_ball_count)->Arg(5)->Arg(20)->Arg(80);

void bm_eval_global(benchmark::State& state) {
  HyperCube K{{0.5, 0.5}, 0.5};
  auto f = TargetFunction::linear(K, {1.0, 0.0}, 0.0);
  BuildOptions opts;
  opts.r_override = 0.25;
  auto gc = build_grid(f, 0.25, opts);
  std::vector<double> y{0.7, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(eval_global(gc, y));
  state.counters["cubes"] = static_cast<double>(gc.centers.size());
}
BENCHMARK(bm_eval_global);

}  // namespace

BENCHMARK_MAIN();
