#include "volstudy/event_study.hpp"

#include <algorithm>
#include <cmath>

#include "volstudy/errors.hpp"
#include "volstudy/parallel.hpp"
#include "volstudy/rng.hpp"
#include "volstudy/stats.hpp"

namespace volstudy {

CrossSection::CrossSection(std::vector<std::string> case_ids,
                           std::size_t window_length,
                           std::vector<double> residuals,
                           std::vector<double> variances)
    : case_ids_(std::move(case_ids)),
      window_length_(window_length),
      residuals_(std::move(residuals)),
      variances_(std::move(variances)) {
  if (case_ids_.size() < 3) {
    throw Error(Err::TooFewCases,
                "cross-section needs at least 3 cases, got " +
                    std::to_string(case_ids_.size()));
  }
  if (window_length_ == 0) {
    throw Error(Err::EmptyWindow, "cross-section window is empty");
  }
  const std::size_t expected = case_ids_.size() * window_length_;
  if (residuals_.size() != expected || variances_.size() != expected) {
    throw Error(Err::MalformedInput, "cross-section matrices are not K x L");
  }
  for (double v : variances_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(Err::NonPositiveVariance,
                  "cross-section has a non-positive variance forecast");
    }
  }
}

double multiplier(const CrossSection& cs, std::size_t t) {
  const std::size_t k = cs.num_cases();
  const double kd = static_cast<double>(k);
  double resid_sum = 0.0;
  double var_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    resid_sum += cs.residual(i, t);
    var_sum += cs.variance(i, t);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double demeaned = kd * cs.residual(i, t) - resid_sum;
    const double scale = kd * (kd - 2.0) * cs.variance(i, t) + var_sum;
    total += demeaned * demeaned / scale;
  }
  return total / (kd - 1.0);
}

std::vector<double> multiplier_path(const CrossSection& cs) {
  std::vector<double> path(cs.window_length());
  for (std::size_t t = 0; t < cs.window_length(); ++t) {
    path[t] = multiplier(cs, t);
  }
  return path;
}

double cav(std::span<const double> multipliers) {
  if (multipliers.empty()) {
    throw Error(Err::EmptyWindow, "CAV over an empty window");
  }
  double sum = 0.0;
  for (double m : multipliers) sum += m;
  return sum - static_cast<double>(multipliers.size());
}

double pct_vol(double cav_value, std::size_t window_length) {
  if (window_length == 0) {
    throw Error(Err::EmptyWindow, "pct_vol over an empty window");
  }
  return cav_value / static_cast<double>(window_length);
}

Chi2Test chi2_test(std::span<const double> multipliers, std::size_t num_cases) {
  if (multipliers.empty()) {
    throw Error(Err::EmptyWindow, "chi-square test over an empty window");
  }
  if (num_cases < 3) {
    throw Error(Err::TooFewCases, "chi-square test needs K >= 3");
  }
  double sum = 0.0;
  for (double m : multipliers) sum += m;
  Chi2Test test;
  test.statistic = static_cast<double>(num_cases - 1) * sum;
  test.df = static_cast<double>((num_cases - 1) * multipliers.size());
  test.p_value = chi2_sf(test.statistic, test.df);
  return test;
}

namespace {

// Pseudo-dates a case can host: the window must fit, leave one day of history
// for the conditioning state, and not overlap the true announcement window.
std::vector<std::size_t> eligible_dates(const CaseContext& ctx, int nb, int na) {
  std::vector<std::size_t> out;
  const std::size_t n = ctx.resid_full.size();
  const std::size_t reach = static_cast<std::size_t>(nb + na);
  const std::size_t lo = static_cast<std::size_t>(nb) + 1;
  for (std::size_t s = lo; s + static_cast<std::size_t>(na) < n; ++s) {
    const std::size_t true_center = ctx.window.first + static_cast<std::size_t>(nb);
    const std::size_t gap = s > true_center ? s - true_center : true_center - s;
    if (gap <= reach) continue;
    out.push_back(s);
  }
  return out;
}

double pseudo_cav(const std::vector<const CaseContext*>& picks,
                  const std::vector<std::size_t>& centers, int nb, int na) {
  const std::size_t k = picks.size();
  const std::size_t len = static_cast<std::size_t>(nb + na) + 1;
  std::vector<double> resid(k * len);
  std::vector<double> fvar(k * len);
  for (std::size_t i = 0; i < k; ++i) {
    const CaseContext& ctx = *picks[i];
    const std::size_t start = centers[i] - static_cast<std::size_t>(nb);
    const VarState state{ctx.sigma2_full[start - 1], ctx.resid_full[start - 1]};
    for (std::size_t t = 0; t < len; ++t) {
      resid[i * len + t] = ctx.resid_full[start + t];
      fvar[i * len + t] =
          forecast_variance(ctx.params, state, static_cast<int>(t) + 1);
    }
  }
  // Inline multiplier sum over the pseudo cross-section.
  const double kd = static_cast<double>(k);
  double total = 0.0;
  for (std::size_t t = 0; t < len; ++t) {
    double resid_sum = 0.0;
    double var_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      resid_sum += resid[i * len + t];
      var_sum += fvar[i * len + t];
    }
    double day = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double demeaned = kd * resid[i * len + t] - resid_sum;
      const double scale = kd * (kd - 2.0) * fvar[i * len + t] + var_sum;
      day += demeaned * demeaned / scale;
    }
    total += day / (kd - 1.0);
  }
  return total - static_cast<double>(len);
}

}  // namespace

BootstrapResult bootstrap_cav(const std::vector<CaseContext>& cases,
                              int days_before, int days_after,
                              double observed_cav, std::size_t replications,
                              std::uint64_t seed, int workers) {
  if (replications < 1) {
    throw Error(Err::InvalidConfig, "bootstrap needs >= 1 replication");
  }
  if (cases.size() < 3) {
    throw Error(Err::TooFewCases, "bootstrap needs K >= 3 cases");
  }
  std::vector<std::vector<std::size_t>> eligible;
  std::vector<const CaseContext*> usable;
  for (const auto& ctx : cases) {
    auto dates = eligible_dates(ctx, days_before, days_after);
    if (dates.empty()) continue;
    eligible.push_back(std::move(dates));
    usable.push_back(&ctx);
  }
  if (usable.empty()) {
    throw Error(Err::NoEligibleDates,
                "no case has room for a pseudo announcement window");
  }

  BootstrapResult result;
  result.replications = replications;
  result.seed = seed;
  result.draws.assign(replications, 0.0);
  const std::size_t k = cases.size();

  parallel_for(replications, workers, [&](std::size_t r) {
    Rng rng(derive_seed(seed, "bootstrap", r));
    std::vector<const CaseContext*> picks(k);
    std::vector<std::size_t> centers(k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t c = rng.uniform_below(usable.size());
      picks[i] = usable[c];
      centers[i] = eligible[c][rng.uniform_below(eligible[c].size())];
    }
    result.draws[r] = pseudo_cav(picks, centers, days_before, days_after);
  });

  std::size_t ge = 0, le = 0;
  for (double d : result.draws) {
    if (d >= observed_cav) ++ge;
    if (d <= observed_cav) ++le;
  }
  result.p_upper = static_cast<double>(ge) / static_cast<double>(replications);
  result.p_lower = static_cast<double>(le) / static_cast<double>(replications);
  return result;
}

GroupStudyResult run_group_study(const std::vector<CasePanel>& cases,
                                 OutcomeGroup group, const WindowSpec& window,
                                 const StudyConfig& config) {
  std::vector<const CasePanel*> members;
  for (const auto& c : cases) {
    if (c.info.group == group) members.push_back(&c);
  }

  struct Prepared {
    bool ok = false;
    std::string reason;
    CaseContext ctx;
    WindowSlice slice;
  };
  std::vector<Prepared> prepared(members.size());

  parallel_for(members.size(), config.workers, [&](std::size_t i) {
    const CasePanel& cp = *members[i];
    Prepared& out = prepared[i];
    out.ctx.case_id = cp.info.case_id;
    try {
      const IndexRange win = resolve_window(cp.panel, cp.info.outcome_date, window);
      const IndexRange est = estimation_range(cp.panel, cp.info.outcome_date,
                                              window, config.estimation_length);
      const GarchFit fit = fit_garch(cp.panel, est, config.garch);
      if (!fit.converged) {
        throw Error(Err::NonConvergence,
                    "fit stopped after " + std::to_string(fit.iterations) +
                        " iterations");
      }
      out.slice = window_residuals(fit, cp.panel, win);
      out.ctx.params = fit.params;
      out.ctx.window = win;
      out.ctx.resid_full.resize(cp.panel.size());
      for (std::size_t t = 0; t < cp.panel.size(); ++t) {
        out.ctx.resid_full[t] = cp.panel.stock[t] - fit.params.alpha -
                                fit.params.beta * cp.panel.market[t];
      }
      out.ctx.sigma2_full =
          filtered_sigma2(fit.params, cp.panel.stock, cp.panel.market);
      out.ok = true;
    } catch (const Error& e) {
      out.reason = e.what();
    }
  });

  GroupStudyResult study;
  std::vector<CaseContext> contexts;
  std::vector<double> resid;
  std::vector<double> fvar;
  std::vector<std::string> ids;
  const std::size_t len = window.length();
  for (auto& p : prepared) {
    if (!p.ok) {
      study.dropped.push_back(CaseFailure{p.ctx.case_id, p.reason});
      continue;
    }
    ids.push_back(p.ctx.case_id);
    resid.insert(resid.end(), p.slice.residuals.begin(), p.slice.residuals.end());
    fvar.insert(fvar.end(), p.slice.forecast_variances.begin(),
                p.slice.forecast_variances.end());
    contexts.push_back(std::move(p.ctx));
  }
  if (ids.size() < 3) {
    throw Error(Err::TooFewCases,
                std::string(group_name(group)) + " group has " +
                    std::to_string(ids.size()) + " usable cases, need >= 3");
  }

  const CrossSection cs(ids, len, std::move(resid), std::move(fvar));
  study.case_ids = cs.case_ids();
  study.multipliers = multiplier_path(cs);
  study.result.group = group_name(group);
  study.result.window_compact = window.compact();
  study.result.window_label = window.label();
  study.result.num_cases = cs.num_cases();
  study.result.window_length = len;
  study.result.cav = cav(study.multipliers);
  study.result.pct_vol = pct_vol(study.result.cav, len);
  study.result.chi2 = chi2_test(study.multipliers, cs.num_cases());

  study.day_offsets.resize(len);
  study.cumulative.resize(len);
  double running = 0.0;
  for (std::size_t t = 0; t < len; ++t) {
    study.day_offsets[t] = static_cast<int>(t) - window.days_before();
    running += study.multipliers[t] - 1.0;
    study.cumulative[t] = running;
  }

  study.mean_residual.assign(len, 0.0);
  for (std::size_t t = 0; t < len; ++t) {
    double s = 0.0;
    for (std::size_t i = 0; i < cs.num_cases(); ++i) s += cs.residual(i, t);
    study.mean_residual[t] = s / static_cast<double>(cs.num_cases());
  }

  study.case_variance_ratio.resize(cs.num_cases());
  for (std::size_t i = 0; i < cs.num_cases(); ++i) {
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      num += cs.residual(i, t) * cs.residual(i, t);
      den += cs.variance(i, t);
    }
    study.case_variance_ratio[i] = num / den;
  }
  std::vector<double> sorted_ratios = study.case_variance_ratio;
  std::sort(sorted_ratios.begin(), sorted_ratios.end());
  const std::size_t mid = sorted_ratios.size() / 2;
  study.median_case_variance_ratio =
      sorted_ratios.size() % 2 == 1
          ? sorted_ratios[mid]
          : 0.5 * (sorted_ratios[mid - 1] + sorted_ratios[mid]);

  const std::uint64_t boot_seed = derive_seed(
      config.seed, std::string("study/") + group_name(group) + "/" +
                       window.compact());
  study.result.bootstrap = bootstrap_cav(
      contexts, window.days_before(), window.days_after(), study.result.cav,
      config.bootstrap_replications, boot_seed, config.workers);
  return study;
}

}  // namespace volstudy
