// Serial reference vs OpenMP version of each kernel.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "concord/kernels.hpp"

using namespace concord::kernels;

namespace {

// Rows that reject most masks, so the scan walks deep into the order.
struct ScanInput {
  std::vector<std::vector<std::int8_t>> storage;
  std::vector<SignRow> rows;

  ScanInput(std::size_t m, std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(0, 99);
    storage.assign(n, std::vector<std::int8_t>(std::size_t{1} << m));
    for (auto& r : storage) {
      for (auto& x : r) x = d(rng) < 97 ? -1 : 1;
      rows.push_back(r.data());
    }
    // Make only the full set admissible.
    for (auto& r : storage) r.back() = 1;
  }
};

template <bool Parallel>
void BM_LevelScan(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  ScanInput in(m, 16);
  const auto& order = canonical_masks(m);
  for (auto _ : state) {
    bool timed_out = false;
    const auto p = Parallel ? level_scan_parallel(in.rows, order, true, Deadline{}, timed_out)
                            : level_scan_serial(in.rows, order, true, Deadline{}, timed_out);
    benchmark::DoNotOptimize(p);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(order.size()));
}

bool costly(std::size_t i) {
  std::uint64_t h = i;
  for (int k = 0; k < 200; ++k) h = h * 6364136223846793005ULL + 1442695040888963407ULL;
  return h & 1;
}

template <bool Parallel>
void BM_Filter(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto f = Parallel ? filter_parallel(n, costly) : filter_serial(n, costly);
    benchmark::DoNotOptimize(f.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_PairMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto pred = [](std::size_t i, std::size_t j) { return costly(i * 7919 + j); };
  for (auto _ : state) {
    auto m = Parallel ? pair_matrix_parallel(n, pred) : pair_matrix_serial(n, pred);
    benchmark::DoNotOptimize(m.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * (state.range(0) - 1) / 2);
}

}  // namespace

BENCHMARK(BM_LevelScan<false>)->Name("level_scan/serial")->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LevelScan<true>)->Name("level_scan/parallel")->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Filter<false>)->Name("filter/serial")->Arg(1 << 14)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Filter<true>)->Name("filter/parallel")->Arg(1 << 14)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PairMatrix<false>)->Name("pair_matrix/serial")->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PairMatrix<true>)->Name("pair_matrix/parallel")->Arg(512)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
