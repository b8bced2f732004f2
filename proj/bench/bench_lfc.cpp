// Serial vs parallel lfc_main, and the linear-algebra oracle, on a few catalog fields.

#include "lfc/checks.hpp"

#include <benchmark/benchmark.h>

using namespace lfc;

namespace {

const std::vector<std::string> kFields{"Q3.3.C3.2", "Q2.4.V4.4", "Q2.4.C4.5", "Q3.6.S3.1"};

const GaloisGroup &group(int i) {
  static std::vector<GaloisGroupPtr> cache = [] {
    std::vector<GaloisGroupPtr> out;
    const auto cat = read_catalog(LFC_DATA_DIR "/catalog.json");
    for (const auto &name : kFields)
      for (const auto &e : cat)
        if (e.name == name)
          out.push_back(compute_automorphisms(make_field(e.field)));
    return out;
  }();
  return *cache.at(i);
}

void lfc_run(benchmark::State &state, Exec exec) {
  const auto &G = group(static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(1));
  state.SetLabel(kFields[state.range(0)]);
  for (auto _ : state)
    benchmark::DoNotOptimize(lfc_main(G, k, exec));
}

void BM_lfc_serial(benchmark::State &state) { lfc_run(state, Exec::Serial); }
void BM_lfc_parallel(benchmark::State &state) { lfc_run(state, Exec::Parallel); }

// H^2 of Gal(L/Q_p) and classification of the lfc output
void BM_oracle_h2(benchmark::State &state) {
  const auto &G = group(static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(1));
  state.SetLabel(kFields[state.range(0)]);
  auto r = lfc_main(G, k);
  CheckOptions opt;
  opt.force = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_check("h2", G, r, opt));
}

// H^2 plus identification by inflation to Gal(F/Q_p), unguarded
void BM_oracle_path(benchmark::State &state) {
  const auto &G = group(static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(1));
  state.SetLabel(kFields[state.range(0)]);
  auto r = lfc_main(G, k);
  OracleLimits lim;
  lim.max_group = 1 << 20;
  lim.max_dim = 1 << 20;
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle_class_path(G, r, lim));
}

void args(benchmark::internal::Benchmark *b) {
  for (int i = 0; i < static_cast<int>(kFields.size()); ++i)
    for (int k : {6, 10})
      b->Args({i, k});
  b->Unit(benchmark::kMillisecond);
}

} // namespace

BENCHMARK(BM_lfc_serial)->Apply(args);
BENCHMARK(BM_lfc_parallel)->Apply(args);
BENCHMARK(BM_oracle_h2)->Apply(args);
BENCHMARK(BM_oracle_path)->ArgsProduct({{0, 1, 2, 3}, {6}})->Iterations(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
