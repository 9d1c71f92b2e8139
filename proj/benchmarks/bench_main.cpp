#include <benchmark/benchmark.h>

#include <random>

#include "mcglift/alpha.hpp"
#include "mcglift/forge.hpp"

using namespace mcglift;

static void BM_SchreierSimsS3Orbit(benchmark::State& state) {
  auto rho = *first_epimorphism(2, FiniteTarget::symmetric3());
  auto rec = orbit(rho, standard_autgens(2));
  auto gens = product_generators(rec.members);
  for (auto _ : state)
    benchmark::DoNotOptimize(PermGroup::generate(gens.front().degree(), gens).order());
  state.SetLabel(std::to_string(gens.front().degree()) + " points");
}
BENCHMARK(BM_SchreierSimsS3Orbit)->Unit(benchmark::kMillisecond);

static void BM_SchreierSimsA5Power(benchmark::State& state) {
  auto t = FiniteTarget::psl2(5);
  auto rec = orbit(*first_epimorphism(2, t), standard_autgens(2), OrbitOptions{true});
  std::vector<FiniteHom> members;
  for (const auto& m : rec.members) {
    if (members.size() == static_cast<std::size_t>(state.range(0)))
      break;
    members.push_back(m);
  }
  auto gens = product_generators(members);
  for (auto _ : state)
    benchmark::DoNotOptimize(PermGroup::generate(gens.front().degree(), gens).order());
}
BENCHMARK(BM_SchreierSimsA5Power)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_EnumerateS3(benchmark::State& state) {
  auto t = FiniteTarget::symmetric3();
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_homs(static_cast<int>(state.range(0)), t).size());
}
BENCHMARK(BM_EnumerateS3)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_EnumerateA5(benchmark::State& state) {
  auto t = FiniteTarget::alternating5();
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_homs(2, t).size());
}
BENCHMARK(BM_EnumerateA5)->Unit(benchmark::kMillisecond);

static void BM_DehnReduce(benchmark::State& state) {
  SurfacePresentation pres(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  std::vector<SurfaceWord> words;
  for (int i = 0; i < 256; ++i) {
    std::vector<Letter> w;
    for (int j = 0; j < 40; ++j) {
      Letter x = static_cast<Letter>(rng() % static_cast<unsigned>(pres.generator_count())) + 1;
      w.push_back(rng() % 2 ? x : -x);
    }
    words.emplace_back(w);
  }
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(pres.is_trivial(words[i++ % words.size()]));
}
BENCHMARK(BM_DehnReduce)->Arg(2)->Arg(4);

static void BM_OrbitS3(benchmark::State& state) {
  auto rho = *first_epimorphism(2, FiniteTarget::symmetric3());
  auto gens = standard_autgens(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(orbit(rho, gens).k());
}
BENCHMARK(BM_OrbitS3)->Unit(benchmark::kMillisecond);

static void BM_AlphaHomology(benchmark::State& state) {
  auto rs = schreier_generators(cover_by_name("homology2", 2));
  auto gens = standard_autgens(2);
  for (auto _ : state)
    for (const auto& g : gens)
      benchmark::DoNotOptimize(alpha_apply(rs, g).values.size());
}
BENCHMARK(BM_AlphaHomology)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
