// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "kreiss/bounds.hpp"
#include "kreiss/expm.hpp"
#include "kreiss/linalg.hpp"
#include "kreiss/propagator.hpp"
#include "kreiss/resolvent.hpp"

using namespace kreiss;

namespace
{

// One per-m block of the truncated wave operator, size 2(2N+1).
Matrix wave_block(int n)
{
  const auto sys = shifted(build_wave({n, n}), 0.5);
  return block_form(sys).blocks.back().op;
}

void BM_Expm(benchmark::State &state)
{
  const Matrix a = -0.5 * wave_block(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(expm(a));
  state.SetLabel("dim " + std::to_string(a.rows()));
}
BENCHMARK(BM_Expm)->Arg(4)->Arg(8)->Arg(16);

void BM_SigmaMinSvd(benchmark::State &state)
{
  const Matrix a = wave_block(static_cast<int>(state.range(0)));
  const Matrix m = Complex(-0.3, 2.0) * Matrix::Identity(a.rows(), a.cols()) - a;
  for (auto _ : state)
    benchmark::DoNotOptimize(linalg::sigma_min_svd(m));
}
BENCHMARK(BM_SigmaMinSvd)->Arg(4)->Arg(8)->Arg(16);

void BM_ResolventSample(benchmark::State &state)
{
  const auto sys = shifted(build_wave({8, 8}), 0.5);
  ResolventOptions opts;
  opts.method = state.range(0) == 0 ? linalg::SigmaMinMethod::Svd
                                    : linalg::SigmaMinMethod::InverseIteration;
  opts.workers = 1;
  const ResolventEvaluator eval(sys, opts);
  for (auto _ : state)
    benchmark::DoNotOptimize(eval.sample({-0.3, 2.0}));
  state.SetLabel(state.range(0) == 0 ? "svd" : "inverse iteration");
}
BENCHMARK(BM_ResolventSample)->Arg(0)->Arg(1);

void BM_GramCesaro(benchmark::State &state)
{
  const auto sys = shifted(build_wave({static_cast<int>(state.range(0)), 1}), 0.5);
  GramOptions opts;
  opts.workers = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(gram_cesaro(sys, 16.0, 1.0, 0.25, opts));
}
BENCHMARK(BM_GramCesaro)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
