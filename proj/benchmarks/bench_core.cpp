#include <benchmark/benchmark.h>

#include <cmath>

#include "residua/characters.hpp"
#include "residua/multfun_sieve.hpp"
#include "residua/prime_ap.hpp"
#include "residua/primes.hpp"
#include "residua/residue_tally.hpp"

namespace {

using residua::u32;
using residua::u64;

void BM_SieveRangeFull(benchmark::State& state) {
  auto fn = static_cast<residua::MultFn>(state.range(0));
  u64 lo = static_cast<u64>(state.range(1));
  u64 hi = lo + (1u << 20);
  for (auto _ : state) {
    auto seg = residua::sieve_range(lo, hi, fn);
    benchmark::DoNotOptimize(seg.full.data());
  }
  state.SetItemsProcessed(state.iterations() * (hi - lo));
}
BENCHMARK(BM_SieveRangeFull)
    ->Args({static_cast<int>(residua::MultFn::Phi), 1})
    ->Args({static_cast<int>(residua::MultFn::Sigma), 1})
    ->Args({static_cast<int>(residua::MultFn::Phi), 1 << 30})
    ->Args({static_cast<int>(residua::MultFn::Sigma), 1 << 30})
    ->Unit(benchmark::kMillisecond);

void BM_SieveRangeResidue(benchmark::State& state) {
  u64 lo = static_cast<u64>(state.range(0));
  u64 hi = lo + (1u << 20);
  for (auto _ : state) {
    auto seg = residua::sieve_range(lo, hi, residua::MultFn::Aliquot, 101);
    benchmark::DoNotOptimize(seg.residues.data());
  }
  state.SetItemsProcessed(state.iterations() * (hi - lo));
}
BENCHMARK(BM_SieveRangeResidue)
    ->Arg(1)
    ->Arg(1 << 30)
    ->Arg(1ll << 44)
    ->Unit(benchmark::kMillisecond);

void BM_LargestPrimeFactorRange(benchmark::State& state) {
  u64 lo = static_cast<u64>(state.range(0));
  u64 hi = lo + (1u << 20);
  for (auto _ : state) {
    auto lpf = residua::largest_prime_factor_range(lo, hi);
    benchmark::DoNotOptimize(lpf.data());
  }
  state.SetItemsProcessed(state.iterations() * (hi - lo));
}
BENCHMARK(BM_LargestPrimeFactorRange)
    ->Arg(1)
    ->Arg(1 << 30)
    ->Unit(benchmark::kMillisecond);

void BM_Tally(benchmark::State& state) {
  u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    auto t = residua::tally(x, residua::MultFn::Phi, 101,
                            residua::TallyFilter::All);
    benchmark::DoNotOptimize(t.counts.data());
  }
  state.SetItemsProcessed(state.iterations() * x);
}
BENCHMARK(BM_Tally)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

void BM_JointTally(benchmark::State& state) {
  u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    auto j = residua::joint_tally(x, 101);
    benchmark::DoNotOptimize(j.counts.data());
  }
  state.SetItemsProcessed(state.iterations() * x);
}
BENCHMARK(BM_JointTally)
    ->Arg(1 << 20)
    ->Arg(1 << 24)
    ->Unit(benchmark::kMillisecond);

void BM_PairCount(benchmark::State& state) {
  u64 x = static_cast<u64>(state.range(0));
  residua::PairPredicate pred;
  pred.kind = residua::PairPredicate::Kind::PhiAvoid;
  pred.a = 1;
  for (auto _ : state) {
    auto c = residua::pair_count(x, 101, pred);
    benchmark::DoNotOptimize(c.value);
  }
  state.SetItemsProcessed(state.iterations() * x);
}
BENCHMARK(BM_PairCount)
    ->Arg(1 << 20)
    ->Arg(1 << 24)
    ->Unit(benchmark::kMillisecond);

void BM_BuildCharacterTable(benchmark::State& state) {
  u32 p = static_cast<u32>(state.range(0));
  for (auto _ : state) {
    auto t = residua::build_character_table(p);
    benchmark::DoNotOptimize(t.index.data());
  }
}
BENCHMARK(BM_BuildCharacterTable)->Arg(101)->Arg(1009)->Arg(10007);

void BM_SigmaTwistCoefficients(benchmark::State& state) {
  u32 p = static_cast<u32>(state.range(0));
  auto t = residua::build_character_table(p);
  for (auto _ : state) {
    auto c = residua::sigma_twist_coefficients(t, 1, 2);
    benchmark::DoNotOptimize(c.a.data());
  }
}
BENCHMARK(BM_SigmaTwistCoefficients)->Arg(101)->Arg(1009);

void BM_CharSum(benchmark::State& state) {
  u64 x = static_cast<u64>(state.range(0));
  auto t = residua::build_character_table(101);
  for (auto _ : state) {
    auto s = residua::char_sum(x, t, 1, 5);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * x);
}
BENCHMARK(BM_CharSum)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

void BM_CharSumMatrix(benchmark::State& state) {
  u64 x = static_cast<u64>(state.range(0));
  auto t = residua::build_character_table(11);
  for (auto _ : state) {
    auto m = residua::char_sum_matrix(x, t);
    benchmark::DoNotOptimize(m.s.data());
  }
  state.SetItemsProcessed(state.iterations() * x);
}
BENCHMARK(BM_CharSumMatrix)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_CountSmooth(benchmark::State& state) {
  u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    residua::SmoothQuery q{static_cast<double>(x), std::pow(x, 1.0 / 3)};
    benchmark::DoNotOptimize(residua::count_smooth(q));
  }
}
BENCHMARK(BM_CountSmooth)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

void BM_PiAp(benchmark::State& state) {
  double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(residua::pi_ap(t, 101, 7));
  }
}
BENCHMARK(BM_PiAp)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

void BM_PrimeCountTable(benchmark::State& state) {
  u64 limit = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    residua::PrimeCountTable table(limit);
    benchmark::DoNotOptimize(table.pi(limit));
  }
  state.SetItemsProcessed(state.iterations() * limit);
}
BENCHMARK(BM_PrimeCountTable)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
