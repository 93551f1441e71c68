#include <benchmark/benchmark.h>

#include "qalg/finitarity.hpp"

namespace {

using namespace qalg;

MetricSpace ab() { return MetricSpace::from_table({"a", "b"}, {0, 1, 1, 0}); }

// All-pairs closure on the 202-term universe of the counter-example.
void BM_MeetClosure(benchmark::State& state) {
  const TwoOpsModel model(ab(), 0.5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(meet_target(model, 2));
}
BENCHMARK(BM_MeetClosure)->Unit(benchmark::kMillisecond);

void BM_Counterexample(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_counterexample(0.5, depth));
}
BENCHMARK(BM_Counterexample)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_OrdinaryFreeMonoid(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(OrdinaryFreeModel(monoid_presentation(), ab(), monoid_oracle(), depth));
}
BENCHMARK(BM_OrdinaryFreeMonoid)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_UnaryFreeAction(benchmark::State& state) {
  const FiniteQuantAlgebra m(MetricSpace::from_table({"e", "m"}, {0, 0.3, 0.3, 0}), Signature{{"mul", 2}, {"e", 0}},
                             {{"mul", {0, 1, 1, 1}}, {"e", {0}}});
  const auto v = action_presentation(m);
  for (auto _ : state) benchmark::DoNotOptimize(UnaryFreeModel(v, ab(), 3));
}
BENCHMARK(BM_UnaryFreeAction)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
