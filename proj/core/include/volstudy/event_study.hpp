// Cross-sectional abnormal-volatility event study: per-day volatility
// multipliers pooled across cases, cumulative abnormal volatility over the
// announcement window, an asymptotic chi-square test, and a resampling test
// that draws pseudo outcome dates from the non-event stretches of each case.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volstudy/garch.hpp"
#include "volstudy/series.hpp"

namespace volstudy {

// K cases by L window days of mean-equation residuals and matching variance
// forecasts, aligned by offset within each case's own window.
class CrossSection {
 public:
  CrossSection(std::vector<std::string> case_ids, std::size_t window_length,
               std::vector<double> residuals, std::vector<double> variances);

  std::size_t num_cases() const { return case_ids_.size(); }
  std::size_t window_length() const { return window_length_; }
  const std::vector<std::string>& case_ids() const { return case_ids_; }

  double residual(std::size_t i, std::size_t t) const {
    return residuals_[i * window_length_ + t];
  }
  double variance(std::size_t i, std::size_t t) const {
    return variances_[i * window_length_ + t];
  }

 private:
  std::vector<std::string> case_ids_;
  std::size_t window_length_;
  std::vector<double> residuals_;  // row-major K x L
  std::vector<double> variances_;
};

// Volatility multiplier on window day t: the cross-sectional dispersion of
// demeaned residuals scaled by the forecast variances,
//   M_t = 1/(K-1) * sum_i (K e_i - sum_j e_j)^2
//                       / (K(K-2) v_i + sum_j v_j).
// Needs K >= 3.
double multiplier(const CrossSection& cs, std::size_t t);
std::vector<double> multiplier_path(const CrossSection& cs);

// Cumulative abnormal volatility: sum of multipliers minus the window length.
double cav(std::span<const double> multipliers);

// Average abnormal volatility per window day.
double pct_vol(double cav_value, std::size_t window_length);

struct Chi2Test {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 0.0;
};

// Asymptotic test of "all multipliers are 1": statistic (K-1) * sum_t M_t
// referred to a chi-square with (K-1) * L degrees of freedom, upper tail.
Chi2Test chi2_test(std::span<const double> multipliers, std::size_t num_cases);

struct BootstrapResult {
  std::size_t replications = 0;
  double p_upper = 0.0;  // share of pseudo CAVs >= observed
  double p_lower = 0.0;  // share of pseudo CAVs <= observed
  std::uint64_t seed = 0;
  std::vector<double> draws;  // pseudo CAVs in replication order
};

// Per-case inputs the resampling test and the study share. `resid_full` and
// `sigma2_full` run over the whole panel under the fitted parameters.
struct CaseContext {
  std::string case_id;
  GarchParams params;
  IndexRange window;  // true announcement window, panel indices
  std::vector<double> resid_full;
  std::vector<double> sigma2_full;
};

// Resampling test: each replication redraws, with replacement, K (case,
// pseudo outcome date) pairs from stretches whose windows neither leave the
// case's data nor overlap its true announcement window, then recomputes CAV
// with the case's own fitted parameters and filtered variance state.
// Replication r draws from a generator seeded by (seed, "bootstrap", r), so
// the result is independent of the worker count.
BootstrapResult bootstrap_cav(const std::vector<CaseContext>& cases,
                              int days_before, int days_after,
                              double observed_cav, std::size_t replications,
                              std::uint64_t seed, int workers);

struct StudyConfig {
  std::size_t estimation_length = 500;
  GarchConfig garch;
  std::size_t bootstrap_replications = 5000;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct CaseFailure {
  std::string case_id;
  std::string reason;
};

struct CavResult {
  std::string group;
  std::string window_compact;
  std::string window_label;
  std::size_t num_cases = 0;
  std::size_t window_length = 0;
  double cav = 0.0;
  double pct_vol = 0.0;
  Chi2Test chi2;
  std::optional<BootstrapResult> bootstrap;
};

struct GroupStudyResult {
  CavResult result;
  std::vector<int> day_offsets;          // -N_B .. N_A
  std::vector<double> multipliers;       // per window day
  std::vector<double> cumulative;        // running sum of (M_t - 1)
  std::vector<double> mean_residual;     // per-day average residual diagnostic
  std::vector<std::string> case_ids;     // surviving cases
  std::vector<double> case_variance_ratio;  // per-case window/forecast ratio
  double median_case_variance_ratio = 0.0;
  std::vector<CaseFailure> dropped;
};

// One case ready for the study: its panel plus the case row.
struct CasePanel {
  EventCase info;
  AlignedPanel panel;
};

GroupStudyResult run_group_study(const std::vector<CasePanel>& cases,
                                 OutcomeGroup group, const WindowSpec& window,
                                 const StudyConfig& config);

}  // namespace volstudy
