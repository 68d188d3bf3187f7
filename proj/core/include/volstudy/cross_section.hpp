// Case-level abnormal volatility and the cross-sectional OLS that relates it
// to dispute characteristics.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volstudy/series.hpp"

namespace volstudy {

// Log ratio of event-window return variance to pre-event return variance,
// both with denominator n-1. Needs >= 2 observations on each side and a
// positive pre-event variance.
double abnormal_volatility(std::span<const double> event_returns,
                           std::span<const double> pre_event_returns);

// Explanatory features extracted from a case row. `sa` is the share awarded
// (amount awarded / amount claimed); the remaining features come from the
// case file's covariate columns PIC, RL, AR, CO, IE.
struct CaseFeatures {
  std::string case_id;
  double av = 0.0;
  double sa = 0.0;
  double pic = 0.0;
  double rl = 0.0;
  double ar = 0.0;
  double co = 0.0;
  double ie = 0.0;
};

// Builds features for one case with its abnormal volatility. Returns nullopt
// (with a warning appended) when the share awarded cannot be computed;
// throws Error(MissingFeature) when a covariate column is absent.
std::optional<CaseFeatures> extract_features(const EventCase& c, double av,
                                             std::vector<std::string>& warnings);

// Regression design: [const, SA, PIC, RL, PIC*RL, AR, CO, IE] and the
// abnormal-volatility response.
struct Design {
  std::vector<std::string> names;
  std::vector<std::string> case_ids;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> x;  // row-major n x k
  std::vector<double> y;
};

Design build_design(std::span<const CaseFeatures> features);

struct RegressionResult {
  std::vector<std::string> names;
  std::vector<double> estimates;
  std::vector<double> std_errors;
  std::vector<double> t_values;
  std::vector<double> p_values;  // two-sided, t distribution on n-k df
  double r2 = 0.0;
  double adj_r2 = 0.0;
  std::size_t n = 0;
  std::size_t k = 0;
  bool robust = false;
};

// OLS with homoskedastic standard errors by default; `robust` switches to
// HC1 sandwich errors.
RegressionResult fit_ols(const Design& design, bool robust = false);

// "***", "**", "*" at the 1/5/10 percent levels, "" otherwise.
std::string significance_stars(double p_value);

// Fixed-width coefficient table for terminal output.
std::string render_regression_table(const RegressionResult& r);

}  // namespace volstudy
