#include <benchmark/benchmark.h>

#include <cmath>
#include <map>
#include <span>

#include "volstudy/garch.hpp"
#include "volstudy/rng.hpp"

using namespace volstudy;

namespace {

GarchParams bench_params() {
  GarchParams p;
  p.alpha = 2e-4;
  p.beta = 1.1;
  p.psi0 = 5e-6;
  p.psi1 = 0.85;
  p.psi2 = 0.10;
  return p;
}

// One simulated panel per size, built lazily and reused across iterations.
const AlignedPanel& panel_of(std::size_t n) {
  static std::map<std::size_t, AlignedPanel> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const GarchParams p = bench_params();
  Rng rng(derive_seed(99, "bench", n));
  AlignedPanel panel;
  panel.dates.resize(n);
  panel.stock.resize(n);
  panel.market.resize(n);
  double sigma2 = p.unconditional_variance();
  double eps = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    sigma2 = p.psi0 + p.psi1 * sigma2 + p.psi2 * eps * eps;
    eps = std::sqrt(sigma2) * rng.normal();
    panel.market[t] = 0.01 * rng.normal();
    panel.stock[t] = p.alpha + p.beta * panel.market[t] + eps;
  }
  return cache.emplace(n, std::move(panel)).first->second;
}

void log_likelihood_eval(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const AlignedPanel& panel = panel_of(n);
  const GarchParams p = bench_params();
  for (auto _ : state) {
    double ll = log_likelihood(p, panel.stock, panel.market);
    benchmark::DoNotOptimize(ll);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(log_likelihood_eval)->RangeMultiplier(2)->Range(250, 4000);

void filtered_variance_path(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const AlignedPanel& panel = panel_of(n);
  const GarchParams p = bench_params();
  for (auto _ : state) {
    auto path = filtered_sigma2(p, panel.stock, panel.market);
    benchmark::DoNotOptimize(path.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(filtered_variance_path)->RangeMultiplier(2)->Range(250, 4000);

void full_fit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const AlignedPanel& panel = panel_of(n);
  for (auto _ : state) {
    auto fit = fit_garch(panel, IndexRange{0, n - 1});
    benchmark::DoNotOptimize(fit.log_likelihood);
  }
}
BENCHMARK(full_fit)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void variance_forecast_path(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  const GarchParams p = bench_params();
  VarState s;
  s.sigma2 = 2.0 * p.unconditional_variance();
  s.eps = 0.01;
  for (auto _ : state) {
    auto path = forecast_path(p, s, horizon);
    benchmark::DoNotOptimize(path.data());
  }
}
BENCHMARK(variance_forecast_path)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace
