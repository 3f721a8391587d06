#include <benchmark/benchmark.h>

#include <random>

#include "hyparr/coxeter.hpp"
#include "hyparr/derivations.hpp"
#include "hyparr/freeness.hpp"
#include "hyparr/lattice.hpp"
#include "hyparr/matrix.hpp"

using namespace hyparr;

namespace {

Arrangement braid(int n) {
  std::vector<Hyperplane> hs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      VectorQ v(static_cast<std::size_t>(n), 0);
      v[static_cast<std::size_t>(i)] = 1;
      v[static_cast<std::size_t>(j)] = -1;
      hs.emplace_back(v, 0);
    }
  }
  return Arrangement(n, std::move(hs));
}

void charpoly_braid(benchmark::State& state, CharpolyMethod method) {
  const auto a = braid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(charpoly(a, method));
}
BENCHMARK_CAPTURE(charpoly_braid, mobius, CharpolyMethod::mobius)->DenseRange(3, 6);
BENCHMARK_CAPTURE(charpoly_braid, delres, CharpolyMethod::delres)->DenseRange(3, 5);
BENCHMARK_CAPTURE(charpoly_braid, finitefield, CharpolyMethod::finitefield)->DenseRange(3, 5);

void kernel_low_rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> c(-5, 5);
  std::vector<VectorQ> rows;
  for (std::size_t i = 0; i < n / 2; ++i) {
    VectorQ r;
    for (std::size_t j = 0; j < n; ++j) r.push_back(c(rng));
    rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < n / 2; ++i) {
    VectorQ r = rows[i];
    for (std::size_t j = 0; j < n; ++j) r[j] += rows[(i + 1) % (n / 2)][j];
    rows.push_back(std::move(r));
  }
  const auto m = MatrixQ::from_rows(rows, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(m));
}
BENCHMARK(kernel_low_rank)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void exponents_constant_multiplicity(benchmark::State& state) {
  const auto phi = positive_roots(Family::G, 2);
  const auto a = coxeter_arrangement(phi);
  const auto m = Multiplicity::constant(a.size(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exponents_rank2(a, m));
}
BENCHMARK(exponents_constant_multiplicity)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void free_test_catalan_cone(benchmark::State& state) {
  const auto phi = positive_roots(Family::B, static_cast<int>(state.range(0)));
  const auto a = cone(deformation({phi, -1, 1}));
  for (auto _ : state) benchmark::DoNotOptimize(free_test(a));
}
BENCHMARK(free_test_catalan_cone)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void er_verify_shi(benchmark::State& state) {
  const auto phi = positive_roots(Family::A, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(er_verify(phi, 1, ErKind::shi));
}
BENCHMARK(er_verify_shi)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
