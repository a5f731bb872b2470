#include <benchmark/benchmark.h>

#include "hsvd/generate.hpp"
#include "hsvd/kernels.hpp"
#include "hsvd/merge.hpp"
#include "hsvd/svd_factor.hpp"

namespace {

hsvd::SvdFactor random_factor(hsvd::Index m, hsvd::Index k, std::uint64_t seed) {
  hsvd::SpectrumSpec spec;
  spec.kind = hsvd::SpectrumSpec::Kind::Exponential;
  spec.ratio = 0.8;
  spec.rank = k;
  spec.seed = seed;
  const hsvd::GeneratedMatrix gen = hsvd::gen_low_rank(m, k, spec);
  hsvd::SvdFactor f = hsvd::full_svd(gen.x);
  return hsvd::truncate_factor(f, 1e-12);
}

void bm_merge_pair_naive(benchmark::State& state) {
  const auto m = static_cast<hsvd::Index>(state.range(0));
  const auto k = static_cast<hsvd::Index>(state.range(1));
  const hsvd::SvdFactor f1 = random_factor(m, k, 11);
  const hsvd::SvdFactor f2 = random_factor(m, k, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hsvd::merge_pair_naive(
        f1, f2, hsvd::MergeOrientation::ColumnConcat, 1e-8));
  }
}

void bm_merge_pair_qr(benchmark::State& state) {
  const auto m = static_cast<hsvd::Index>(state.range(0));
  const auto k = static_cast<hsvd::Index>(state.range(1));
  const hsvd::SvdFactor f1 = random_factor(m, k, 11);
  const hsvd::SvdFactor f2 = random_factor(m, k, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hsvd::merge_pair_qr(
        f1, f2, hsvd::MergeOrientation::ColumnConcat, 1e-8));
  }
}

}  // namespace

BENCHMARK(bm_merge_pair_naive)
    ->Args({1024, 16})
    ->Args({4096, 16})
    ->Args({4096, 64})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_merge_pair_qr)
    ->Args({1024, 16})
    ->Args({4096, 16})
    ->Args({4096, 64})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
