#include <benchmark/benchmark.h>

#include <cmath>
#include <string>
#include <vector>

#include "volstudy/event_study.hpp"
#include "volstudy/rng.hpp"

using namespace volstudy;

namespace {

CrossSection random_cross_section(std::size_t k, std::size_t len,
                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids(k);
  std::vector<double> resid(k * len), var(k * len);
  for (std::size_t i = 0; i < k; ++i) {
    ids[i] = "CASE" + std::to_string(i);
    for (std::size_t t = 0; t < len; ++t) {
      var[i * len + t] = 1e-4 * (0.5 + rng.uniform01());
      resid[i * len + t] = std::sqrt(var[i * len + t]) * rng.normal();
    }
  }
  return CrossSection(std::move(ids), len, std::move(resid), std::move(var));
}

void multiplier_pooling(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  const CrossSection cs = random_cross_section(k, 21, 7);
  for (auto _ : state) {
    auto path = multiplier_path(cs);
    benchmark::DoNotOptimize(path.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(k) * 21);
}
BENCHMARK(multiplier_pooling)->RangeMultiplier(2)->Range(4, 256);

// Resampling test over synthetic contexts: constant forecast variance,
// residuals drawn under it, ten cases with a 21-day window each.
std::vector<CaseContext> synthetic_contexts(std::size_t k, std::size_t days) {
  GarchParams p;
  p.psi0 = 4e-5;
  p.psi1 = 0.8;
  p.psi2 = 0.1;
  const double uncond = p.unconditional_variance();
  Rng rng(11);
  std::vector<CaseContext> cases(k);
  for (std::size_t i = 0; i < k; ++i) {
    cases[i].case_id = "CASE" + std::to_string(i);
    cases[i].params = p;
    cases[i].window = IndexRange{days / 2 - 10, days / 2 + 10};
    cases[i].resid_full.resize(days);
    cases[i].sigma2_full.assign(days, uncond);
    for (std::size_t t = 0; t < days; ++t) {
      cases[i].resid_full[t] = std::sqrt(uncond) * rng.normal();
    }
  }
  return cases;
}

void bootstrap_resampling(benchmark::State& state) {
  const std::size_t reps = static_cast<std::size_t>(state.range(0));
  const int workers = static_cast<int>(state.range(1));
  const auto cases = synthetic_contexts(10, 600);
  for (auto _ : state) {
    auto result = bootstrap_cav(cases, 10, 10, 3.0, reps, 17, workers);
    benchmark::DoNotOptimize(result.p_upper);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(reps));
}
BENCHMARK(bootstrap_resampling)
    ->Args({256, 1})
    ->Args({1024, 1})
    ->Args({1024, 4})
    ->Unit(benchmark::kMillisecond);

}  // namespace
