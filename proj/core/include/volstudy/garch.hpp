// Joint market-model + GARCH(1,1) engine: Gaussian quasi-likelihood, fitting
// by deterministic Nelder-Mead in a transformed unconstrained space, variance
// filtering, and multi-step variance forecasts.
//
// Model:  r_t = alpha + beta * r_mkt_t + eps_t,  eps_t ~ N(0, sigma2_t)
//         sigma2_t = psi0 + psi1 * sigma2_{t-1} + psi2 * eps2_{t-1}
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volstudy/series.hpp"

namespace volstudy {

struct GarchParams {
  double alpha = 0.0;
  double beta = 0.0;
  double psi0 = 0.0;
  double psi1 = 0.0;
  double psi2 = 0.0;

  double persistence() const { return psi1 + psi2; }
  bool stationary() const {
    return psi0 > 0.0 && psi1 >= 0.0 && psi2 >= 0.0 && persistence() < 1.0;
  }
  double unconditional_variance() const { return psi0 / (1.0 - persistence()); }
};

// Conditioning state at the end of a filtered stretch of data.
struct VarState {
  double sigma2 = 0.0;
  double eps = 0.0;
};

struct GarchConfig {
  std::size_t min_obs = 100;
  double tolerance = 1e-8;   // relative log-likelihood change
  int max_iterations = 500;
  double psi1_init = 0.85;
  double psi2_init = 0.10;
};

struct GarchFit {
  GarchParams params;
  double log_likelihood = 0.0;
  double initial_log_likelihood = 0.0;
  bool converged = false;
  int iterations = 0;
  VarState terminal;        // state on the last estimation day
  IndexRange estimation;    // panel indices the fit used
  std::vector<double> sigma2_path;  // conditional variances over the range
};

// Gaussian log-likelihood of the residuals under the recursion, seeded at
// sigma2_seed (default: sample variance of the mean-equation residuals).
// The seed variance applies to the first observation.
double log_likelihood(const GarchParams& params, std::span<const double> stock,
                      std::span<const double> market,
                      std::optional<double> sigma2_seed = std::nullopt);

// Maximum-likelihood fit over panel[range]. Deterministic: beta initialized
// from OLS, variance parameters from variance targeting, then Nelder-Mead on
// (alpha, beta, log psi0, logit persistence, logit share).
GarchFit fit_garch(const AlignedPanel& panel, IndexRange range,
                   const GarchConfig& config = {});

// Conditional variance path over the data, seeded like the likelihood.
std::vector<double> filtered_sigma2(const GarchParams& params,
                                    std::span<const double> stock,
                                    std::span<const double> market,
                                    std::optional<double> sigma2_seed = std::nullopt);

// k-step-ahead variance forecast from a conditioning state (k >= 1):
// one step ahead is the recursion itself; further steps decay geometrically
// toward the unconditional variance at rate psi1 + psi2.
double forecast_variance(const GarchParams& params, const VarState& state,
                         int k);
std::vector<double> forecast_path(const GarchParams& params,
                                  const VarState& state, int horizon);

// Residuals and matching variance forecasts over the announcement window,
// which must start right after the fit's estimation range.
struct WindowSlice {
  std::vector<double> residuals;
  std::vector<double> forecast_variances;
};
WindowSlice window_residuals(const GarchFit& fit, const AlignedPanel& panel,
                             IndexRange window);

}  // namespace volstudy
