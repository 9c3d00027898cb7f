// Microbenchmarks for the focal-point engine against the dense baseline.
// Run ./benchmarks/belcal_bench --benchmark_filter=... ; the bandwidth-style
// counters report focal-point counts per state.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "belcal/belcal.hpp"

namespace {

using namespace belcal;

MassFunction<1> make_mass(std::size_t n, std::size_t supp, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomMassOptions opts;
  opts.include_frame = true;
  return random_mass<1>(Frame::of_size(n), supp, rng, opts);
}

void closure_of_support(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto supp = static_cast<std::size_t>(state.range(1));
  auto m = make_mass(n, supp, 1);
  std::size_t fp_size = 0;
  for (auto _ : state) {
    auto fp = FocalPointSet<1>::closure(m.frame(), m.support(),
                                        OrderDirection::Superset);
    fp_size = fp.size();
    benchmark::DoNotOptimize(fp);
  }
  state.counters["fp"] = static_cast<double>(fp_size);
}
BENCHMARK(closure_of_support)
    ->Args({12, 16})
    ->Args({20, 32})
    ->Args({25, 50})
    ->Args({40, 64});

void commonality_on_focal_points(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto supp = static_cast<std::size_t>(state.range(1));
  auto m = make_mass(n, supp, 2);
  auto fp = FocalPointSet<1>::closure(m.frame(), m.support(),
                                      OrderDirection::Superset);
  for (auto _ : state) {
    auto q = zeta_on_focal_points(fp, m.values());
    benchmark::DoNotOptimize(q);
  }
  state.counters["fp"] = static_cast<double>(fp.size());
}
BENCHMARK(commonality_on_focal_points)
    ->Args({12, 16})
    ->Args({20, 32})
    ->Args({25, 50});

void mobius_on_focal_points(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto supp = static_cast<std::size_t>(state.range(1));
  auto m = make_mass(n, supp, 3);
  auto fp = FocalPointSet<1>::closure(m.frame(), m.support(),
                                      OrderDirection::Superset);
  auto q = zeta_on_focal_points(fp, m.values());
  for (auto _ : state) {
    auto back = efficient_mobius(fp, q);
    benchmark::DoNotOptimize(back);
  }
  state.counters["fp"] = static_cast<double>(fp.size());
}
BENCHMARK(mobius_on_focal_points)
    ->Args({12, 16})
    ->Args({20, 32})
    ->Args({25, 50});

void weights_round_trip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto supp = static_cast<std::size_t>(state.range(1));
  auto m = make_mass(n, supp, 4);
  auto fp = FocalPointSet<1>::closure(m.frame(), m.support(),
                                      OrderDirection::Superset);
  auto q = zeta_on_focal_points(fp, m.values());
  for (auto _ : state) {
    auto h = efficient_mobius_multiplicative(fp, q);
    std::vector<double> hv(fp.size());
    for (std::size_t i = 0; i < fp.size(); ++i) hv[i] = h.at(fp.point(i));
    auto q2 = product_zeta_on_focal_points(fp, hv);
    auto back = efficient_mobius(fp, q2);
    benchmark::DoNotOptimize(back);
  }
  state.counters["fp"] = static_cast<double>(fp.size());
}
BENCHMARK(weights_round_trip)->Args({12, 16})->Args({20, 32})->Args({25, 50});

void fmt_dense_zeta(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto m = make_mass(n, std::min<std::size_t>(32, (1u << n) - 1), 5);
  auto dense = to_dense(m.values(), 1ull << 32);
  for (auto _ : state) {
    auto a = dense;
    fmt(a, n, TransformKind::Zeta, OrderDirection::Superset, 1ull << 32);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(fmt_dense_zeta)->Arg(12)->Arg(16)->Arg(20)->Arg(24);

void dempster_via_focal_points(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto supp = static_cast<std::size_t>(state.range(1));
  auto m1 = make_mass(n, supp, 6);
  auto m2 = make_mass(n, supp, 7);
  for (auto _ : state) {
    auto fused = dempster_combine_via_commonalities(m1, m2);
    benchmark::DoNotOptimize(fused);
  }
}
BENCHMARK(dempster_via_focal_points)->Args({12, 16})->Args({25, 32});

}  // namespace

BENCHMARK_MAIN();
