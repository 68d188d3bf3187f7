#include "volstudy/garch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "volstudy/errors.hpp"
#include "volstudy/nelder_mead.hpp"
#include "volstudy/stats.hpp"

namespace volstudy {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kHugePenalty = 1e300;

void check_slice(std::span<const double> stock, std::span<const double> market) {
  if (stock.size() != market.size()) {
    throw Error(Err::MalformedInput, "stock/market slices differ in length");
  }
  if (stock.empty()) {
    throw Error(Err::TooShortSeries, "empty return slice");
  }
}

std::vector<double> residuals(double alpha, double beta,
                              std::span<const double> stock,
                              std::span<const double> market) {
  std::vector<double> eps(stock.size());
  for (std::size_t t = 0; t < stock.size(); ++t) {
    eps[t] = stock[t] - alpha - beta * market[t];
  }
  return eps;
}

double seed_variance(std::span<const double> eps) {
  return eps.size() >= 2 ? sample_variance(eps) : 0.0;
}

// Core likelihood over precomputed residuals; returns -inf-like penalty-safe
// value only through the public wrappers.
double loglik_from_residuals(const GarchParams& p,
                             std::span<const double> eps, double sigma2_seed) {
  double sigma2 = sigma2_seed;
  double ll = 0.0;
  for (std::size_t t = 0; t < eps.size(); ++t) {
    if (t > 0) {
      sigma2 = p.psi0 + p.psi1 * sigma2 + p.psi2 * eps[t - 1] * eps[t - 1];
    }
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
      return -std::numeric_limits<double>::infinity();
    }
    ll -= 0.5 * (kLog2Pi + std::log(sigma2) + eps[t] * eps[t] / sigma2);
  }
  return ll;
}

// Unconstrained optimizer coordinates:
//   theta = (alpha, beta, log psi0, logit(psi1+psi2), logit(psi1/(psi1+psi2)))
double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

GarchParams theta_to_params(const std::vector<double>& theta) {
  GarchParams p;
  p.alpha = theta[0];
  p.beta = theta[1];
  p.psi0 = std::exp(theta[2]);
  const double persistence = logistic(theta[3]);
  const double share = logistic(theta[4]);
  p.psi1 = persistence * share;
  p.psi2 = persistence * (1.0 - share);
  return p;
}

std::vector<double> params_to_theta(const GarchParams& p) {
  const double persistence =
      std::clamp(p.persistence(), 1e-8, 1.0 - 1e-8);
  const double share = std::clamp(p.psi1 / persistence, 1e-8, 1.0 - 1e-8);
  return {p.alpha, p.beta, std::log(p.psi0), logit(persistence), logit(share)};
}

}  // namespace

double log_likelihood(const GarchParams& params, std::span<const double> stock,
                      std::span<const double> market,
                      std::optional<double> sigma2_seed) {
  check_slice(stock, market);
  if (!params.stationary()) {
    throw Error(Err::NonStationaryParams,
                "psi0 > 0, psi1/psi2 >= 0 and psi1 + psi2 < 1 required");
  }
  const auto eps = residuals(params.alpha, params.beta, stock, market);
  const double seed = sigma2_seed.value_or(seed_variance(eps));
  if (!(seed > 0.0)) {
    throw Error(Err::NonPositiveVariance,
                "variance seed must be positive, got " + std::to_string(seed));
  }
  const double ll = loglik_from_residuals(params, eps, seed);
  if (!std::isfinite(ll)) {
    throw Error(Err::NonPositiveVariance, "variance recursion left (0, inf)");
  }
  return ll;
}

std::vector<double> filtered_sigma2(const GarchParams& params,
                                    std::span<const double> stock,
                                    std::span<const double> market,
                                    std::optional<double> sigma2_seed) {
  check_slice(stock, market);
  if (!params.stationary()) {
    throw Error(Err::NonStationaryParams, "filter needs stationary parameters");
  }
  const auto eps = residuals(params.alpha, params.beta, stock, market);
  const double seed = sigma2_seed.value_or(seed_variance(eps));
  if (!(seed > 0.0)) {
    throw Error(Err::NonPositiveVariance, "variance seed must be positive");
  }
  std::vector<double> path(eps.size());
  path[0] = seed;
  for (std::size_t t = 1; t < eps.size(); ++t) {
    path[t] =
        params.psi0 + params.psi1 * path[t - 1] + params.psi2 * eps[t - 1] * eps[t - 1];
  }
  return path;
}

GarchFit fit_garch(const AlignedPanel& panel, IndexRange range,
                   const GarchConfig& config) {
  if (range.last >= panel.size() || range.first > range.last) {
    throw Error(Err::WindowOutOfRange, "estimation range outside the panel");
  }
  const std::size_t n = range.length();
  if (n < config.min_obs) {
    throw Error(Err::TooShortSeries,
                "estimation range has " + std::to_string(n) +
                    " observations, need " + std::to_string(config.min_obs));
  }
  const std::span<const double> stock(panel.stock.data() + range.first, n);
  const std::span<const double> market(panel.market.data() + range.first, n);

  // OLS initialization of the mean equation.
  const double mx = mean(market);
  const double my = mean(stock);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    sxx += (market[t] - mx) * (market[t] - mx);
    sxy += (market[t] - mx) * (stock[t] - my);
    syy += (stock[t] - my) * (stock[t] - my);
  }
  // An exactly constant series can still show rounding residue in syy, so
  // test the values themselves as well.
  if (!(syy > 0.0) ||
      std::adjacent_find(stock.begin(), stock.end(),
                         std::not_equal_to<>()) == stock.end()) {
    throw Error(Err::DegenerateData, "stock returns are constant");
  }
  GarchParams init;
  init.beta = sxx > 0.0 ? sxy / sxx : 0.0;
  init.alpha = my - init.beta * mx;
  const auto eps0 = residuals(init.alpha, init.beta, stock, market);
  const double resid_var = seed_variance(eps0);
  if (!(resid_var > 0.0)) {
    throw Error(Err::DegenerateData, "mean-equation residuals are constant");
  }
  init.psi1 = config.psi1_init;
  init.psi2 = config.psi2_init;
  // Variance targeting: match the unconditional variance to the residuals.
  init.psi0 = resid_var * (1.0 - init.psi1 - init.psi2);

  const auto objective = [&](const std::vector<double>& theta) {
    const GarchParams p = theta_to_params(theta);
    if (!p.stationary() || !std::isfinite(p.psi0)) return kHugePenalty;
    const auto eps = residuals(p.alpha, p.beta, stock, market);
    const double seed = seed_variance(eps);
    if (!(seed > 0.0)) return kHugePenalty;
    const double ll = loglik_from_residuals(p, eps, seed);
    return std::isfinite(ll) ? -ll : kHugePenalty;
  };

  const auto theta0 = params_to_theta(init);
  const std::vector<double> steps{0.1 * std::sqrt(resid_var), 0.25, 0.5, 0.5, 0.5};
  const auto opt = nelder_mead(objective, theta0, steps, config.tolerance,
                               config.max_iterations);

  GarchFit fit;
  fit.params = theta_to_params(opt.x);
  fit.converged = opt.converged;
  fit.iterations = opt.iterations;
  fit.estimation = range;
  fit.initial_log_likelihood = -objective(theta0);

  const auto eps = residuals(fit.params.alpha, fit.params.beta, stock, market);
  fit.sigma2_path = filtered_sigma2(fit.params, stock, market);
  fit.log_likelihood = loglik_from_residuals(fit.params, eps, fit.sigma2_path[0]);
  fit.terminal = VarState{fit.sigma2_path.back(), eps.back()};
  return fit;
}

double forecast_variance(const GarchParams& params, const VarState& state,
                         int k) {
  if (!params.stationary()) {
    throw Error(Err::NonStationaryParams, "forecast needs stationary parameters");
  }
  if (k < 1) {
    throw Error(Err::EmptyWindow, "forecast horizon must be >= 1");
  }
  const double one_step = params.psi0 + params.psi1 * state.sigma2 +
                          params.psi2 * state.eps * state.eps;
  if (k == 1) return one_step;
  const double uncond = params.unconditional_variance();
  return uncond +
         std::pow(params.persistence(), k - 1) * (one_step - uncond);
}

std::vector<double> forecast_path(const GarchParams& params,
                                  const VarState& state, int horizon) {
  std::vector<double> out(static_cast<std::size_t>(horizon));
  for (int k = 1; k <= horizon; ++k) {
    out[static_cast<std::size_t>(k - 1)] = forecast_variance(params, state, k);
  }
  return out;
}

WindowSlice window_residuals(const GarchFit& fit, const AlignedPanel& panel,
                             IndexRange window) {
  if (window.first != fit.estimation.last + 1) {
    throw Error(Err::WindowOutOfRange,
                "window must start right after the estimation range");
  }
  if (window.last >= panel.size()) {
    throw Error(Err::WindowOutOfRange, "window extends past the panel");
  }
  WindowSlice slice;
  const std::size_t len = window.length();
  slice.residuals.reserve(len);
  slice.forecast_variances = forecast_path(fit.params, fit.terminal,
                                           static_cast<int>(len));
  for (std::size_t i = window.first; i <= window.last; ++i) {
    slice.residuals.push_back(panel.stock[i] - fit.params.alpha -
                              fit.params.beta * panel.market[i]);
  }
  return slice;
}

}  // namespace volstudy
