#include <benchmark/benchmark.h>

#include <random>

#include "toric_ic/fan_io.hpp"
#include "toric_ic/icengine.hpp"
#include "toric_ic/lattice.hpp"
#include "toric_ic/toruscoh.hpp"

using namespace toric_ic;

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long long>(rng() % 41) - 20;
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(6)->Arg(10);

static void BM_DeligneCorpusFan(benchmark::State& state, const char* name, const char* character) {
  Fan f = builtin_fan(name);
  Character chi = Character::parse(character);
  Perversity p = Perversity::middle(static_cast<int>(f.ambient_rank()));
  for (auto _ : state) benchmark::DoNotOptimize(deligne_ic(f, chi, p));
}
BENCHMARK_CAPTURE(BM_DeligneCorpusFan, affine3_trivial, "affine:3", "0,0,0");
BENCHMARK_CAPTURE(BM_DeligneCorpusFan, cone_over_square, "cone_over_square", "0,0,1/2");
BENCHMARK_CAPTURE(BM_DeligneCorpusFan, projective_plane, "projective_space:2", "1/3,0");

static void BM_VanishingVerdict(benchmark::State& state) {
  Fan f = builtin_fan("hirzebruch:2");
  Character chi = Character::parse("1/4,1/6");
  for (auto _ : state) benchmark::DoNotOptimize(vanishing_verdict(f, chi, Perversity::middle(2)));
}
BENCHMARK(BM_VanishingVerdict);

static void BM_KoszulOracle(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::vector<long long> nums(k, 0);
  nums.back() = 5;
  Character chi = Character::from_fractions(nums, 12);
  for (auto _ : state) benchmark::DoNotOptimize(torus_cohomology_koszul_oracle(k, chi));
}
BENCHMARK(BM_KoszulOracle)->Arg(2)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
