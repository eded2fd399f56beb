#include <benchmark/benchmark.h>

#include "swipt/ao_driver.hpp"
#include "swipt/atb_stage.hpp"
#include "swipt/channel.hpp"
#include "swipt/prb_stage.hpp"

namespace {

using namespace swipt;

SystemConfig bench_config(int n) {
  SystemConfig cfg;
  cfg.n = n;
  cfg.e_min.assign(cfg.k, 5e-6);
  return cfg;
}

struct Point {
  SystemConfig cfg;
  ChannelSet channels;
  Initialization init;
};

Point make_point(int n) {
  Point p{bench_config(n), {}, {}};
  p.channels = generate_channels(p.cfg, Geometry{}, 1);
  p.init = initialize(p.channels, p.cfg, 1);
  return p;
}

void BM_Atb(benchmark::State& state) {
  const Point p = make_point(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_atb(p.init.solution, p.init.aux, p.channels, p.cfg));
  }
}
BENCHMARK(BM_Atb)->Arg(10)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Prb(benchmark::State& state) {
  const Point p = make_point(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_prb(p.init.solution, p.init.aux, p.channels, p.cfg));
  }
}
BENCHMARK(BM_Prb)->Arg(10)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

// Ten outer iterations of the joint design.
void BM_OuterIterations(benchmark::State& state) {
  Point p = make_point(static_cast<int>(state.range(0)));
  p.cfg.t_max = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_jpsapbo(p.channels, p.cfg, 1));
  }
}
BENCHMARK(BM_OuterIterations)->Arg(10)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_ChannelGeneration(benchmark::State& state) {
  const SystemConfig cfg = bench_config(static_cast<int>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_channels(cfg, Geometry{}, ++seed));
}
BENCHMARK(BM_ChannelGeneration)->Arg(30);

}  // namespace
BENCHMARK_MAIN();
