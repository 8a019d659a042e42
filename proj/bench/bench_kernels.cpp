#include <benchmark/benchmark.h>

#include "condense/dirichlet.hpp"
#include "condense/families.hpp"
#include "condense/hypotheses.hpp"
#include "condense/renorm.hpp"

using namespace condense;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_LebesgueTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lebesgue_table(100, 4096, exec_of(state)));
}
BENCHMARK(BM_LebesgueTable)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_ConditionI(benchmark::State& state) {
  const auto family = nonlinear_gal_family(0.5, plan_dimension(64, 4));
  SampleConfig config;
  config.samples = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(check_condition_i(*family, config, exec_of(state)));
}
BENCHMARK(BM_ConditionI)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_ConditionIIIFourier(benchmark::State& state) {
  FourierOptions o;
  o.points = {-2.0, 0.0, 2.0};
  o.quadrature_order = 4096;
  const auto family = fourier_family(o);
  SampleConfig config;
  config.samples = 200;
  config.m_hi = 3;
  for (auto _ : state) benchmark::DoNotOptimize(check_condition_iii(*family, config, exec_of(state)));
}
BENCHMARK(BM_ConditionIIIFourier)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_Envelope(benchmark::State& state) {
  const auto space = SpaceDescriptor::ell_p(0.5, 8);
  SequencePoint s;
  s.set(1, 0.7);
  s.set(2, -0.2);
  s.set(3, 0.05);
  const Point x(s);
  for (auto _ : state) benchmark::DoNotOptimize(envelope_p_norm(space, x, 3, 12, exec_of(state)));
}
BENCHMARK(BM_Envelope)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
