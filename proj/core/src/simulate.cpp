#include "volstudy/simulate.hpp"

#include <cmath>
#include <cstdio>

#include "volstudy/errors.hpp"
#include "volstudy/parallel.hpp"
#include "volstudy/rng.hpp"

namespace volstudy {

namespace {

std::vector<Date> trading_calendar(Date start, std::size_t count) {
  std::vector<Date> days;
  days.reserve(count);
  Date d = start;
  while (days.size() < count) {
    if (!d.is_weekend()) days.push_back(d);
    d = d.next_day();
  }
  return days;
}

std::string padded_name(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%03zu", prefix, i + 1);
  return buf;
}

std::vector<PricePoint> to_prices(const std::vector<Date>& dates,
                                  const std::vector<double>& returns) {
  std::vector<PricePoint> prices;
  prices.reserve(returns.size() + 1);
  double level = 100.0;
  prices.push_back(PricePoint{dates[0], level});
  for (std::size_t t = 0; t < returns.size(); ++t) {
    level *= std::exp(returns[t]);
    prices.push_back(PricePoint{dates[t + 1], level});
  }
  return prices;
}

}  // namespace

SimPanel simulate_panel(const SimSpec& spec) {
  if (spec.num_cases == 0) {
    throw Error(Err::InvalidConfig, "simulation needs at least one case");
  }
  if (!spec.params.stationary()) {
    throw Error(Err::NonStationaryParams,
                "simulation parameters must be stationary");
  }
  if (!(spec.market_sigma > 0.0)) {
    throw Error(Err::InvalidConfig, "market sigma must be positive");
  }
  if (!spec.injected_m_per_case.empty() &&
      spec.injected_m_per_case.size() != spec.num_cases) {
    throw Error(Err::InvalidConfig,
                "per-case multipliers must match the number of cases");
  }
  const int nb = spec.window.days_before();
  const int na = spec.window.days_after();
  const std::size_t win_reach = static_cast<std::size_t>(nb + na);
  if (spec.num_days < spec.estimation_length + win_reach + 2 + spec.tail_days) {
    throw Error(Err::InvalidConfig,
                "num_days must exceed estimation length + window length");
  }
  const std::size_t outcome =
      spec.num_days - 1 - static_cast<std::size_t>(na) - spec.tail_days;
  const std::size_t win_first = outcome - static_cast<std::size_t>(nb);
  const std::size_t win_last = outcome + static_cast<std::size_t>(na);

  const auto dates = trading_calendar(spec.start_date, spec.num_days + 1);

  // Shared market factor.
  std::vector<double> market_returns(spec.num_days);
  {
    Rng market_rng(derive_seed(spec.seed, "market"));
    for (double& r : market_returns) r = spec.market_sigma * market_rng.normal();
  }

  SimPanel panel;
  panel.outcome_index = outcome;
  panel.prices[spec.market_ticker] = to_prices(dates, market_returns);
  panel.true_sigma2.resize(spec.num_cases);
  panel.latent_eps.resize(spec.num_cases);
  panel.cases.resize(spec.num_cases);

  std::vector<std::vector<double>> case_returns(spec.num_cases);
  parallel_for(spec.num_cases, spec.workers, [&](std::size_t i) {
    Rng rng(derive_seed(spec.seed, "case", i));
    const GarchParams& p = spec.params;
    const double injected = spec.injected_m_per_case.empty()
                                ? spec.injected_m
                                : spec.injected_m_per_case[i];
    const double shock_scale = std::sqrt(injected);
    double sigma2 = p.unconditional_variance();
    double eps = 0.0;
    for (std::size_t t = 0; t < spec.burn_in; ++t) {
      sigma2 = p.psi0 + p.psi1 * sigma2 + p.psi2 * eps * eps;
      eps = std::sqrt(sigma2) * rng.normal();
    }
    auto& returns = case_returns[i];
    auto& sig_path = panel.true_sigma2[i];
    auto& eps_path = panel.latent_eps[i];
    returns.resize(spec.num_days);
    sig_path.resize(spec.num_days);
    eps_path.resize(spec.num_days);
    for (std::size_t t = 0; t < spec.num_days; ++t) {
      sigma2 = p.psi0 + p.psi1 * sigma2 + p.psi2 * eps * eps;
      eps = std::sqrt(sigma2) * rng.normal();
      sig_path[t] = sigma2;
      eps_path[t] = eps;
      // The injected multiplier scales the observed disturbance only; the
      // variance recursion keeps running on the latent shock, so the effect
      // does not compound through the window.
      const bool in_window = t >= win_first && t <= win_last;
      const double observed = in_window ? shock_scale * eps : eps;
      returns[t] = p.alpha + p.beta * market_returns[t] + observed;
    }
  });

  Rng misc_rng(derive_seed(spec.seed, "cases-misc"));
  if (spec.emit_covariates) {
    panel.covariate_columns = {"PIC", "RL", "AR", "CO", "IE"};
  }
  for (std::size_t i = 0; i < spec.num_cases; ++i) {
    const std::string ticker = padded_name("SIM", i);
    panel.prices[ticker] = to_prices(dates, case_returns[i]);
    EventCase& c = panel.cases[i];
    c.case_id = padded_name("CASE", i);
    c.ticker = ticker;
    c.outcome_date = dates[outcome + 1];  // return t maps to dates[t + 1]
    c.registration_date = dates[0];
    c.group = spec.group;
    const double claimed = 1e6 * std::exp(3.0 * misc_rng.uniform01());
    c.amount_claimed = claimed;
    c.amount_awarded = claimed * misc_rng.uniform01();
    if (spec.emit_covariates) {
      c.covariates["PIC"] = misc_rng.uniform01() < 0.5 ? 0.0 : 1.0;
      // RL plays an index, not a dummy: with two interacted binaries the
      // PIC*RL regressor degenerates too easily in small panels.
      c.covariates["RL"] = misc_rng.uniform01();
      c.covariates["AR"] = misc_rng.uniform01();
      c.covariates["CO"] = misc_rng.uniform01() < 0.5 ? 0.0 : 1.0;
      c.covariates["IE"] = misc_rng.uniform01() < 0.5 ? 0.0 : 1.0;
    }
  }
  return panel;
}

}  // namespace volstudy
