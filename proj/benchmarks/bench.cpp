#include <random>

#include <benchmark/benchmark.h>

#include "symcontract/charfun.hpp"
#include "symcontract/conjugation.hpp"
#include "symcontract/family.hpp"
#include "symcontract/gen.hpp"
#include "symcontract/numlin.hpp"

using namespace symcontract;

static void BM_takagi(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const CMatrix A = gen::random_symmetric(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(numlin::takagi(A));
}
BENCHMARK(BM_takagi)->Arg(4)->Arg(8)->Arg(16);

static void BM_char_eval(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const Contraction T = make_contraction(
      gen::random_contraction_matrix(rng, static_cast<int>(state.range(0))));
  const DefectData dd = defect(T);
  const Complex z(0.3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(char_eval(T, dd, z));
}
BENCHMARK(BM_char_eval)->Arg(4)->Arg(8)->Arg(16);

static void BM_find_conjugation(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const CMatrix T =
      gen::random_contraction_matrix(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_conjugation(T));
}
BENCHMARK(BM_find_conjugation)->Arg(2)->Arg(4);

static void BM_compressed_shift(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const FiniteBlaschke phi =
      gen::random_blaschke(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compressed_shift(phi));
}
BENCHMARK(BM_compressed_shift)->Arg(2)->Arg(4)->Arg(6);

static void BM_classify_family(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const FamilySpec spec =
      gen::random_family_spec(rng, gen::FamilyBranch::Mobius, 3);
  const Contraction T = build_T(spec);
  for (auto _ : state) benchmark::DoNotOptimize(classify(T));
}
BENCHMARK(BM_classify_family);

BENCHMARK_MAIN();
