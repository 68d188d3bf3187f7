// Acceptance suite. Each criterion prints exactly one line:
//   criterion N: PASS <measurements>
//   criterion N: FAIL <measurements>
// and the process exits nonzero if the requested criterion fails.
//
// Usage: acceptance --criterion N [--cli PATH]
//        acceptance --cli PATH            (all criteria)
// The CLI path is only needed by criterion 8.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

#include "json.hpp"
#include "ols_oracle.hpp"
#include "volstudy/cross_section.hpp"
#include "volstudy/digest.hpp"
#include "volstudy/event_study.hpp"
#include "volstudy/garch.hpp"
#include "volstudy/parallel.hpp"
#include "volstudy/rng.hpp"
#include "volstudy/simulate.hpp"

using namespace volstudy;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[768];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

const char* yn(bool ok) { return ok ? "yes" : "NO"; }

int pool_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Kolmogorov-Smirnov distance of a sample from U(0, 1).
double ks_uniform(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double hi = (static_cast<double>(i) + 1.0) / n - sample[i];
    const double lo = sample[i] - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

std::vector<CasePanel> panels_from_sim(const SimPanel& sim,
                                       const std::string& market_ticker) {
  const auto market =
      compute_log_returns(market_ticker, sim.prices.at(market_ticker));
  std::vector<CasePanel> panels;
  for (const auto& c : sim.cases) {
    const auto stock = compute_log_returns(c.ticker, sim.prices.at(c.ticker));
    panels.push_back(CasePanel{c, align(stock, market)});
  }
  return panels;
}

// ---------------------------------------------------------------------------
// 1. Reported-table ratio identities: CAV / window sums to the per-day figure.
// ---------------------------------------------------------------------------

Outcome criterion1() {
  struct Row {
    const char* group;
    const char* window;
    double cav;
    double pct;
  };
  // Published CAV and per-day volatility pairs for the five standard windows.
  const Row rows[] = {
      {"investor", "2d,2d", -1.010, -0.202},
      {"investor", "1w,1w", 2.863, 0.260},
      {"investor", "2w,2w", 1.624, 0.077},
      {"investor", "1m,1m", -7.387, -0.145},
      {"investor", "1m,2m", -13.190, -0.174},
      {"state", "2d,2d", 1.141, 0.228},
      {"state", "1w,1w", 1.686, 0.153},
      {"state", "2w,2w", 27.653, 0.317},
      {"state", "1m,1m", 19.763, 0.388},
      {"state", "1m,2m", 45.949, 0.605},
      {"settled", "2d,2d", -1.691, -0.338},
      {"settled", "1w,1w", -3.700, -0.336},
      {"settled", "2w,2w", 3.279, 0.156},
      {"settled", "1m,1m", 0.444, 0.009},
      {"settled", "1m,2m", -10.859, -0.143},
  };

  const std::map<std::string, std::size_t> expected_lengths{
      {"2d,2d", 5}, {"1w,1w", 11}, {"2w,2w", 21}, {"1m,1m", 51}, {"1m,2m", 76}};
  bool lengths_ok = true;
  for (const auto& [compact, len] : expected_lengths) {
    lengths_ok = lengths_ok && WindowSpec::parse(compact).length() == len;
  }

  const bool spot1 = std::fabs(pct_vol(-1.010, 5) - (-0.202)) <= 0.001;
  const bool spot2 = std::fabs(pct_vol(2.863, 11) - 0.260) <= 0.001;

  std::size_t consistent = 0;
  std::string off_rows;
  for (const Row& r : rows) {
    const std::size_t len = expected_lengths.at(r.window);
    if (std::fabs(pct_vol(r.cav, len) - r.pct) <= 0.001) {
      ++consistent;
    } else {
      if (!off_rows.empty()) off_rows += "+";
      off_rows += std::string(r.group) + "/" + r.window;
    }
  }
  // One published row (state, two weeks either side) does not satisfy its own
  // ratio, so 14 of 15 are internally consistent; the identity must hold on
  // exactly those.
  const bool rows_ok = consistent == 14 && off_rows == "state/2w,2w";

  Outcome out;
  out.pass = lengths_ok && spot1 && spot2 && rows_ok;
  out.detail = fmt(
      "pct_vol(-1.010,5)=%.4f ok=%s pct_vol(2.863,11)=%.4f ok=%s "
      "consistent_rows=%zu/15 (expect 14, off: %s) lengths_ok=%s",
      pct_vol(-1.010, 5), yn(spot1), pct_vol(2.863, 11), yn(spot2), consistent,
      off_rows.empty() ? "none" : off_rows.c_str(), yn(lengths_ok));
  return out;
}

// ---------------------------------------------------------------------------
// 2. Variance-model recovery on simulated series.
// ---------------------------------------------------------------------------

AlignedPanel simulate_series(const GarchParams& p, std::size_t n,
                             double market_sigma, std::uint64_t seed) {
  Rng rng(seed);
  AlignedPanel panel;
  panel.dates.resize(n);  // dates unused by the fit
  panel.stock.resize(n);
  panel.market.resize(n);
  double sigma2 = p.unconditional_variance();
  double eps = 0.0;
  for (int t = 0; t < 300; ++t) {
    sigma2 = p.psi0 + p.psi1 * sigma2 + p.psi2 * eps * eps;
    eps = std::sqrt(sigma2) * rng.normal();
  }
  for (std::size_t t = 0; t < n; ++t) {
    sigma2 = p.psi0 + p.psi1 * sigma2 + p.psi2 * eps * eps;
    eps = std::sqrt(sigma2) * rng.normal();
    panel.market[t] = market_sigma * rng.normal();
    panel.stock[t] = p.alpha + p.beta * panel.market[t] + eps;
  }
  return panel;
}

Outcome criterion2() {
  const auto start = std::chrono::steady_clock::now();
  GarchParams truth;
  truth.alpha = 0.0;
  truth.beta = 1.0;
  truth.psi0 = 0.05;
  truth.psi1 = 0.90;
  truth.psi2 = 0.05;

  const std::size_t count = 20;
  std::vector<double> persistence(count, 0.0);
  std::vector<bool> improved(count, false);
  parallel_for(count, pool_workers(), [&](std::size_t i) {
    const auto panel =
        simulate_series(truth, 5000, 1.0, derive_seed(2, "series", i));
    const auto fit = fit_garch(panel, IndexRange{0, panel.stock.size() - 1});
    persistence[i] = fit.params.persistence();
    improved[i] = fit.log_likelihood >= fit.initial_log_likelihood - 1e-9;
  });

  std::vector<double> sorted = persistence;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[count / 2 - 1] + sorted[count / 2]);
  const bool median_ok = std::fabs(median - 0.95) <= 0.05;
  const std::size_t improved_count =
      static_cast<std::size_t>(std::count(improved.begin(), improved.end(), true));
  const double secs = elapsed_s(start);
  const bool time_ok = secs < 60.0;

  Outcome out;
  out.pass = median_ok && improved_count == count && time_ok;
  out.detail = fmt(
      "median_persistence=%.4f (target 0.95+-0.05: %s) "
      "loglik_improved=%zu/%zu runtime=%.1fs (<60s: %s)",
      median, yn(median_ok), improved_count, count, secs, yn(time_ok));
  return out;
}

// ---------------------------------------------------------------------------
// 3. Forecast law: geometric decay to the long-run variance and agreement
//    with an explicit day-by-day expectation recursion.
// ---------------------------------------------------------------------------

Outcome criterion3() {
  Rng rng(derive_seed(3, "draws"));
  double worst_long = 0.0;
  double worst_path = 0.0;
  for (int i = 0; i < 100; ++i) {
    GarchParams p;
    p.psi0 = 1e-6 * std::pow(100.0, rng.uniform01());
    const double persistence = 0.5 + 0.48 * rng.uniform01();
    const double share = 0.05 + 0.90 * rng.uniform01();
    p.psi1 = persistence * share;
    p.psi2 = persistence * (1.0 - share);
    const double uncond = p.unconditional_variance();

    VarState state;
    state.sigma2 = uncond * (0.5 + 1.5 * rng.uniform01());
    state.eps = std::sqrt(uncond) * rng.normal();

    worst_long = std::max(
        worst_long,
        std::fabs(forecast_variance(p, state, 1000) - uncond) / uncond);

    // Oracle: iterate E[sigma2_{t+k}] = psi0 + (psi1+psi2) E[sigma2_{t+k-1}],
    // seeded with the exact one-step value.
    double step =
        p.psi0 + p.psi1 * state.sigma2 + p.psi2 * state.eps * state.eps;
    for (int k = 1; k <= 50; ++k) {
      if (k > 1) step = p.psi0 + p.persistence() * step;
      worst_path = std::max(
          worst_path, std::fabs(forecast_variance(p, state, k) - step) / step);
    }
  }
  const bool long_ok = worst_long <= 1e-6;
  const bool path_ok = worst_path <= 1e-10;
  Outcome out;
  out.pass = long_ok && path_ok;
  out.detail = fmt(
      "max_rel_err(k=1000 vs long-run)=%.2e (<=1e-6: %s) "
      "max_rel_err(k<=50 vs recursion)=%.2e (<=1e-10: %s)",
      worst_long, yn(long_ok), worst_path, yn(path_ok));
  return out;
}

// ---------------------------------------------------------------------------
// 4 and 5 share one study driver: simulate a panel, run the pooled study,
// report the pieces the calibration checks need.
// ---------------------------------------------------------------------------

struct TrialResult {
  bool ok = false;
  std::string reason;
  double multiplier_sum = 0.0;
  std::size_t days = 0;
  double cav = 0.0;
  double chi2_p = 1.0;
  double boot_p = 1.0;
  std::size_t cases = 0;
};

TrialResult run_trial(std::uint64_t master, const char* tag, std::size_t i,
                      double injected_m, std::size_t bootstrap_reps) {
  TrialResult r;
  try {
    // A long estimation sample keeps the variance forecasts tight, so the
    // multiplier's own small-sample bias dominates the CAV, not forecast
    // noise.
    const std::size_t est = 1500;
    SimSpec spec;
    spec.num_cases = 10;
    spec.num_days = est + 60;
    spec.estimation_length = est;
    spec.burn_in = 300;
    spec.injected_m = injected_m;
    spec.seed = derive_seed(master, std::string(tag) + "-sim", i);

    const SimPanel sim = simulate_panel(spec);
    const auto panels = panels_from_sim(sim, spec.market_ticker);

    StudyConfig cfg;
    cfg.estimation_length = est;
    cfg.bootstrap_replications = bootstrap_reps;
    cfg.seed = derive_seed(master, std::string(tag) + "-study", i);
    cfg.workers = 1;

    const GroupStudyResult study = run_group_study(
        panels, OutcomeGroup::investor, WindowSpec::parse("2w,2w"), cfg);
    for (double m : study.multipliers) r.multiplier_sum += m;
    r.days = study.multipliers.size();
    r.cav = study.result.cav;
    r.chi2_p = study.result.chi2.p_value;
    r.boot_p = study.result.bootstrap->p_upper;
    r.cases = study.result.num_cases;
    r.ok = true;
  } catch (const std::exception& e) {
    r.reason = e.what();
  }
  return r;
}

Outcome criterion4() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t studies = 500;
  std::vector<TrialResult> results(studies);
  parallel_for(studies, pool_workers(), [&](std::size_t i) {
    results[i] = run_trial(4, "null", i, 1.0, 200);
  });

  double msum = 0.0;
  std::size_t days = 0, ok_count = 0, full_k = 0, rejections = 0;
  std::vector<double> boot_ps;
  for (const auto& r : results) {
    if (!r.ok) continue;
    ++ok_count;
    msum += r.multiplier_sum;
    days += r.days;
    if (r.cases == 10) ++full_k;
    if (r.chi2_p < 0.05) ++rejections;
    boot_ps.push_back(r.boot_p);
  }
  const double mean_m = msum / static_cast<double>(days);
  const double rejection_rate =
      static_cast<double>(rejections) / static_cast<double>(ok_count);
  const double ks = ks_uniform(boot_ps);
  const double secs = elapsed_s(start);

  const bool mean_ok = mean_m >= 0.9 && mean_m <= 1.1;
  const bool rej_ok = rejection_rate >= 0.02 && rejection_rate <= 0.10;
  const bool ks_ok = ks < 0.1;
  const bool time_ok = secs < 600.0;

  Outcome out;
  out.pass = mean_ok && rej_ok && ks_ok && time_ok && ok_count == studies;
  out.detail = fmt(
      "studies=%zu/%zu (K=10 in %zu) mean_multiplier=%.4f (band [0.9,1.1]: %s) "
      "chi2_rejection@5%%=%.3f (band [0.02,0.10]: %s) "
      "bootstrap_p_KS=%.4f (<0.1: %s) runtime=%.0fs (<600s: %s)",
      ok_count, studies, full_k, mean_m, yn(mean_ok), rejection_rate,
      yn(rej_ok), ks, yn(ks_ok), secs, yn(time_ok));
  return out;
}

Outcome criterion5() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t trials = 100;
  std::vector<TrialResult> results(trials);
  parallel_for(trials, pool_workers(), [&](std::size_t i) {
    results[i] = run_trial(5, "effect", i, 2.0, 200);
  });

  double cav_sum = 0.0;
  std::size_t ok_count = 0, significant = 0;
  for (const auto& r : results) {
    if (!r.ok) continue;
    ++ok_count;
    cav_sum += r.cav;
    if (r.boot_p < 0.05) ++significant;
  }
  const double mean_cav = cav_sum / static_cast<double>(ok_count);
  const double power =
      static_cast<double>(significant) / static_cast<double>(ok_count);
  const double secs = elapsed_s(start);

  // Injected variance multiplier 2 over a 21-day window: target (2-1)*21.
  const bool cav_ok = mean_cav >= 0.75 * 21.0 && mean_cav <= 1.25 * 21.0;
  const bool power_ok = power >= 0.80;

  Outcome out;
  out.pass = cav_ok && power_ok && ok_count == trials;
  out.detail = fmt(
      "trials=%zu/%zu mean_cav=%.2f (band [%.2f,%.2f]: %s) "
      "bootstrap_power@5%%=%.2f (>=0.80: %s) runtime=%.0fs",
      ok_count, trials, mean_cav, 0.75 * 21.0, 1.25 * 21.0, yn(cav_ok), power,
      yn(power_ok), secs);
  return out;
}

// ---------------------------------------------------------------------------
// 6. Estimator exactness: hand value and degree-zero scale invariance.
// ---------------------------------------------------------------------------

Outcome criterion6() {
  const CrossSection hand({"a", "b", "c"}, 1, {1.0, -1.0, 0.0},
                          {1.0, 1.0, 1.0});
  const double hand_value = multiplier(hand, 0);
  const bool exact = hand_value == 1.5;

  Rng rng(derive_seed(6, "scale"));
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t k = 3 + rng.uniform_below(10);
    const double c = 0.1 + 9.9 * rng.uniform01();
    std::vector<std::string> ids(k);
    std::vector<double> resid(k), var(k), resid_c(k), var_c(k);
    for (std::size_t i = 0; i < k; ++i) {
      ids[i] = "x" + std::to_string(i);
      var[i] = 0.1 + 2.0 * rng.uniform01();
      resid[i] = std::sqrt(var[i]) * rng.normal();
      resid_c[i] = std::sqrt(c) * resid[i];
      var_c[i] = c * var[i];
    }
    const double base = multiplier(CrossSection(ids, 1, resid, var), 0);
    const double scaled = multiplier(CrossSection(ids, 1, resid_c, var_c), 0);
    worst = std::max(worst, std::fabs(scaled - base) / std::fabs(base));
  }
  const bool invariant = worst <= 1e-12;

  Outcome out;
  out.pass = exact && invariant;
  out.detail = fmt(
      "hand_case=%.17g (==1.5: %s) max_rel_scale_drift=%.2e (<=1e-12: %s)",
      hand_value, yn(exact), worst, yn(invariant));
  return out;
}

// ---------------------------------------------------------------------------
// 7. OLS against the extended-precision normal-equations oracle.
// ---------------------------------------------------------------------------

Outcome criterion7() {
  Rng rng(derive_seed(7, "ols"));
  double worst = 0.0;
  double worst_adj_def = 0.0;
  const auto rel = [](double a, long double b) {
    return std::fabs(a - static_cast<double>(b)) /
           std::max(1.0, std::fabs(static_cast<double>(b)));
  };
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 10 + rng.uniform_below(41);  // 10..50
    const std::size_t k = 8;
    Design d;
    d.names = {"const", "x1", "x2", "x3", "x4", "x5", "x6", "x7"};
    d.k = k;
    d.n = n;
    for (std::size_t i = 0; i < n; ++i) {
      d.x.push_back(1.0);
      double signal = 0.3;
      for (std::size_t j = 1; j < k; ++j) {
        const double v = j % 2 == 0 ? rng.normal() : rng.uniform01();
        d.x.push_back(v);
        signal += (j % 3 == 0 ? -0.8 : 0.5) * v;
      }
      d.y.push_back(signal + 0.6 * rng.normal());
    }
    const RegressionResult r = fit_ols(d);
    const ols_oracle::Fit oracle = ols_oracle::fit(d.x, d.y, n, k);
    for (std::size_t j = 0; j < k; ++j) {
      worst = std::max(worst, rel(r.estimates[j], oracle.coef[j]));
      worst = std::max(worst, rel(r.std_errors[j], oracle.std_errors[j]));
      worst = std::max(worst, rel(r.t_values[j], oracle.t_values[j]));
    }
    worst = std::max(worst, rel(r.adj_r2, oracle.adj_r2));
    // Definition check: adj R2 = 1 - (1 - R2)(n - 1)/(n - k).
    const double by_def = 1.0 - (1.0 - r.r2) * static_cast<double>(n - 1) /
                                    static_cast<double>(n - k);
    worst_adj_def = std::max(worst_adj_def, std::fabs(r.adj_r2 - by_def));
  }
  const bool close = worst <= 1e-8;
  const bool def_ok = worst_adj_def <= 1e-12;
  Outcome out;
  out.pass = close && def_ok;
  out.detail = fmt(
      "max_rel_err_vs_oracle=%.2e (<=1e-8: %s) "
      "max_adj_r2_definition_gap=%.2e (<=1e-12: %s)",
      worst, yn(close), worst_adj_def, yn(def_ok));
  return out;
}

// ---------------------------------------------------------------------------
// 8. Byte-level determinism of the study command across reruns and workers.
// ---------------------------------------------------------------------------

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> digest_dir(const fs::path& dir) {
  std::map<std::string, std::string> digests;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      digests[entry.path().filename().string()] = file_digest(entry.path());
    }
  }
  return digests;
}

Outcome criterion8(const std::string& cli) {
  Outcome out;
  if (cli.empty()) {
    out.detail = "needs --cli <path to the volstudy binary>";
    return out;
  }
  const fs::path tmp =
      fs::temp_directory_path() /
      ("volstudy_accept8_" + std::to_string(std::random_device{}()));
  fs::create_directories(tmp);
  struct Cleanup {
    fs::path p;
    ~Cleanup() { fs::remove_all(p); }
  } cleanup{tmp};

  const fs::path data = tmp / "data";
  const fs::path sim_cfg = tmp / "sim.json";
  const fs::path study_cfg = tmp / "study.json";
  {
    std::ofstream s(sim_cfg);
    s << nlohmann::json{{"simulate.cases", 6},
                        {"simulate.days", 560},
                        {"simulate.burn_in", 200},
                        {"estimation.length", 500},
                        {"seed", 11}}
             .dump(2);
    std::ofstream t(study_cfg);
    t << nlohmann::json{{"price_file", (data / "prices.csv").string()},
                        {"case_file", (data / "cases.csv").string()},
                        {"windows", {"1w,1w"}},
                        {"group", "investor"},
                        {"bootstrap.replications", 150},
                        {"estimation.length", 500},
                        {"seed", 9}}
             .dump(2);
  }
  if (run_command(cli + " simulate --config " + sim_cfg.string() + " --out " +
                  data.string() + " > /dev/null 2>&1") != 0) {
    out.detail = "simulate run failed";
    return out;
  }

  const fs::path study_out = tmp / "study";
  const int worker_plan[] = {1, 1, 1, 4, 4};
  std::vector<std::map<std::string, std::string>> digests;
  for (int workers : worker_plan) {
    const int rc = run_command(cli + " study --config " + study_cfg.string() +
                               " --out " + study_out.string() + " --workers " +
                               std::to_string(workers) + " > /dev/null 2>&1");
    if (rc != 0) {
      out.detail = fmt("study run with %d worker(s) exited %d", workers, rc);
      return out;
    }
    digests.push_back(digest_dir(study_out));
  }

  bool identical = true;
  for (std::size_t i = 1; i < digests.size(); ++i) {
    identical = identical && digests[i] == digests[0];
  }
  out.pass = identical && digests[0].size() >= 4;
  out.detail = fmt(
      "runs=5 (workers 1,1,1,4,4) files_per_run=%zu byte_identical=%s",
      digests[0].size(), yn(identical));
  return out;
}

Outcome run_criterion(int n, const std::string& cli) {
  switch (n) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8(cli);
  }
  return Outcome{false, "unknown criterion"};
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      criterion = std::atoi(argv[++i]);
    } else if (arg == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--cli PATH]\n");
      return 2;
    }
  }
  if (criterion != 0 && (criterion < 1 || criterion > 8)) {
    std::fprintf(stderr, "criterion must be between 1 and 8\n");
    return 2;
  }

  bool all_pass = true;
  const int first = criterion == 0 ? 1 : criterion;
  const int last = criterion == 0 ? 8 : criterion;
  for (int n = first; n <= last; ++n) {
    Outcome out;
    try {
      out = run_criterion(n, cli);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d: %s %s\n", n, out.pass ? "PASS" : "FAIL",
                out.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
