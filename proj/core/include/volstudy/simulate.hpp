// Synthetic data generator: a shared Gaussian market factor plus per-case
// GARCH(1,1) disturbances, with an optional volatility multiplier injected
// inside the announcement window. Emits the same price/case structures the
// ingestion layer reads, so simulated runs exercise the full pipeline.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "volstudy/garch.hpp"
#include "volstudy/series.hpp"

namespace volstudy {

struct SimSpec {
  std::size_t num_cases = 10;
  std::size_t num_days = 1100;        // recorded return days per series
  GarchParams params{0.0, 1.0, 5e-6, 0.85, 0.10};
  double market_sigma = 0.01;         // daily market return std dev
  WindowSpec window{{2, WindowUnit::week}, {2, WindowUnit::week}};
  double injected_m = 1.0;            // variance multiplier inside the window
  std::vector<double> injected_m_per_case;  // optional per-case override
  std::uint64_t seed = 1;
  std::size_t burn_in = 1000;
  std::size_t estimation_length = 500;  // history required before the window
  std::size_t tail_days = 0;          // trading days after the window end
  Date start_date{2001, 1, 1};
  OutcomeGroup group = OutcomeGroup::investor;
  std::string market_ticker = "MKT";
  bool emit_covariates = false;       // add synthetic PIC/RL/AR/CO/IE columns
  int workers = 1;
};

struct SimPanel {
  std::map<std::string, std::vector<PricePoint>> prices;  // market + cases
  std::vector<EventCase> cases;
  std::vector<std::string> covariate_columns;
  // Diagnostics for tests: per case, the latent conditional variances and the
  // un-scaled disturbances over the recorded days.
  std::vector<std::vector<double>> true_sigma2;
  std::vector<std::vector<double>> latent_eps;
  std::size_t outcome_index = 0;  // return index of the outcome day
};

// Deterministic in `spec.seed`; each case owns a derived RNG stream, so the
// output is identical for any worker count.
SimPanel simulate_panel(const SimSpec& spec);

}  // namespace volstudy
