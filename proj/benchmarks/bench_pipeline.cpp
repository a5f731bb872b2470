#include <benchmark/benchmark.h>

#include "hsvd/generate.hpp"
#include "hsvd/hierarchy.hpp"
#include "hsvd/kernels.hpp"

namespace {

hsvd::DenseMatrix sharp_decay_matrix(hsvd::Index m, hsvd::Index n) {
  hsvd::SpectrumSpec spec;
  spec.kind = hsvd::SpectrumSpec::Kind::Exponential;
  spec.ratio = 0.7;
  spec.rank = 25;
  spec.noise_floor = 1e-6;
  spec.seed = 42;
  return hsvd::gen_low_rank(m, n, spec).x;
}

void bm_full_svd(benchmark::State& state) {
  const hsvd::DenseMatrix x =
      sharp_decay_matrix(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hsvd::full_svd(x));
  }
}

void bm_hierarchical_svd(benchmark::State& state) {
  const hsvd::DenseMatrix x =
      sharp_decay_matrix(state.range(0), state.range(1));
  hsvd::MatConfig cfg;
  cfg.gamma = 1e-2;
  cfg.row_block_rows = state.range(2);
  cfg.col_block_cols = state.range(3);
  for (auto _ : state) {
    hsvd::SvdFactor right = hsvd::hierarchical_svd(x, cfg);
    benchmark::DoNotOptimize(hsvd::recover_left_vectors(x, *right.v));
  }
}

}  // namespace

BENCHMARK(bm_full_svd)
    ->Args({2048, 256})
    ->Args({8192, 512})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_hierarchical_svd)
    ->Args({2048, 256, 2048, 32})
    ->Args({8192, 512, 2048, 32})
    ->Args({8192, 512, 8192, 64})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
