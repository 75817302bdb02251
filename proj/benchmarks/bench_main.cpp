#include <benchmark/benchmark.h>

#include "wreathgen/analysis.hpp"
#include "wreathgen/group_spec.hpp"
#include "wreathgen/theorem.hpp"
#include "wreathgen/wreath.hpp"

using namespace wreathgen;

namespace {

// Schreier-Sims on the reference generators of A5^(wr n).
void BM_IteratedWreathA5(benchmark::State& state)
{
  const auto seq = WreathSequence::from_specs(std::vector<GroupSpec>(state.range(0), GroupSpec::alternating(5)));
  for (auto _ : state)
    benchmark::DoNotOptimize(iterated_wreath(seq).order());
  state.SetLabel(std::to_string(seq.shape().leaf_count()) + " leaves");
}
BENCHMARK(BM_IteratedWreathA5)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_IteratedWreathS3(benchmark::State& state)
{
  const auto seq = WreathSequence::from_specs(std::vector<GroupSpec>(state.range(0), GroupSpec::symmetric(3)));
  for (auto _ : state)
    benchmark::DoNotOptimize(iterated_wreath(seq).order());
  state.SetLabel(std::to_string(seq.shape().leaf_count()) + " leaves");
}
BENCHMARK(BM_IteratedWreathS3)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_DerivedSubgroup(benchmark::State& state)
{
  const PermGroup w = iterated_wreath(WreathSequence::from_specs(parse_group_sequence("S3; S3; S3")));
  for (auto _ : state)
    benchmark::DoNotOptimize(derived_subgroup(w).order());
}
BENCHMARK(BM_DerivedSubgroup)->Unit(benchmark::kMillisecond);

// Whole pipeline: regrouping, lifting, directed generators, verification.
void BM_ConstructA5(benchmark::State& state)
{
  const auto spec = SequenceSpec::periodic(parse_group_sequence("A5"));
  for (auto _ : state)
    benchmark::DoNotOptimize(construct_dense_subgroup(spec, state.range(0)).verification->dense);
}
BENCHMARK(BM_ConstructA5)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_ConstructS3Periodic(benchmark::State& state)
{
  const auto spec = SequenceSpec::periodic(parse_group_sequence("S3"));
  for (auto _ : state)
    benchmark::DoNotOptimize(construct_dense_subgroup(spec, 2).verification->dense);
}
BENCHMARK(BM_ConstructS3Periodic)->Unit(benchmark::kMillisecond);

void BM_DsequenceC2(benchmark::State& state)
{
  for (auto _ : state)
    benchmark::DoNotOptimize(wreath_power_dsequence(GroupSpec::cyclic(2), 4).rows.size());
}
BENCHMARK(BM_DsequenceC2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
