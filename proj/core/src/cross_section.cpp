#include "volstudy/cross_section.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "volstudy/errors.hpp"
#include "volstudy/stats.hpp"

namespace volstudy {

double abnormal_volatility(std::span<const double> event_returns,
                           std::span<const double> pre_event_returns) {
  if (event_returns.size() < 2 || pre_event_returns.size() < 2) {
    throw Error(Err::TooShortWindow,
                "abnormal volatility needs >= 2 returns on each side");
  }
  // Constant inputs can leave rounding residue in the sample variance, so
  // test the values themselves as well.
  const auto constant = [](std::span<const double> s) {
    return std::adjacent_find(s.begin(), s.end(), std::not_equal_to<>()) ==
           s.end();
  };
  const double pre_var = sample_variance(pre_event_returns);
  if (!(pre_var > 0.0) || constant(pre_event_returns)) {
    throw Error(Err::ZeroPreEventVariance,
                "pre-event returns have zero variance");
  }
  const double event_var = sample_variance(event_returns);
  if (!(event_var > 0.0) || constant(event_returns)) {
    throw Error(Err::DegenerateData, "event-window returns have zero variance");
  }
  return std::log(event_var / pre_var);
}

std::optional<CaseFeatures> extract_features(const EventCase& c, double av,
                                             std::vector<std::string>& warnings) {
  CaseFeatures f;
  f.case_id = c.case_id;
  f.av = av;
  if (!c.amount_claimed || !(*c.amount_claimed > 0.0) || !c.amount_awarded) {
    warnings.push_back(c.case_id +
                       ": share awarded not computable (missing or "
                       "non-positive amounts), case excluded");
    return std::nullopt;
  }
  f.sa = *c.amount_awarded / *c.amount_claimed;
  const auto covariate = [&](const char* name) {
    const auto it = c.covariates.find(name);
    if (it == c.covariates.end()) {
      throw Error(Err::MissingFeature,
                  c.case_id + ": covariate column '" + name + "' is missing");
    }
    return it->second;
  };
  f.pic = covariate("PIC");
  f.rl = covariate("RL");
  f.ar = covariate("AR");
  f.co = covariate("CO");
  f.ie = covariate("IE");
  return f;
}

Design build_design(std::span<const CaseFeatures> features) {
  Design d;
  d.names = {"const", "SA", "PIC", "RL", "PIC*RL", "AR", "CO", "IE"};
  d.k = d.names.size();
  d.n = features.size();
  d.x.reserve(d.n * d.k);
  d.y.reserve(d.n);
  for (const auto& f : features) {
    d.case_ids.push_back(f.case_id);
    d.x.insert(d.x.end(),
               {1.0, f.sa, f.pic, f.rl, f.pic * f.rl, f.ar, f.co, f.ie});
    d.y.push_back(f.av);
  }
  return d;
}

RegressionResult fit_ols(const Design& design, bool robust) {
  const std::size_t n = design.n;
  const std::size_t k = design.k;
  if (n <= k) {
    throw Error(Err::InsufficientObservations,
                "OLS needs n > k, got n = " + std::to_string(n) +
                    ", k = " + std::to_string(k));
  }
  Eigen::MatrixXd x(n, k);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y(static_cast<long>(i)) = design.y[i];
    for (std::size_t j = 0; j < k; ++j) {
      x(static_cast<long>(i), static_cast<long>(j)) = design.x[i * k + j];
    }
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < static_cast<long>(k)) {
    throw Error(Err::SingularDesign,
                "design matrix has rank " + std::to_string(qr.rank()) +
                    " < " + std::to_string(k));
  }
  const Eigen::VectorXd coef = qr.solve(y);
  const Eigen::VectorXd resid = y - x * coef;
  const double ssr = resid.squaredNorm();
  const double dof = static_cast<double>(n - k);
  const Eigen::MatrixXd xtx_inv =
      (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(
          static_cast<long>(k), static_cast<long>(k)));

  Eigen::MatrixXd cov;
  if (robust) {
    // HC1: sandwich with the n/(n-k) small-sample factor.
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(static_cast<long>(k),
                                                 static_cast<long>(k));
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::VectorXd xi = x.row(static_cast<long>(i)).transpose();
      meat += resid(static_cast<long>(i)) * resid(static_cast<long>(i)) * xi *
              xi.transpose();
    }
    cov = xtx_inv * meat * xtx_inv * (static_cast<double>(n) / dof);
  } else {
    cov = xtx_inv * (ssr / dof);
  }

  const double y_mean = y.mean();
  const double sst = (y.array() - y_mean).matrix().squaredNorm();

  RegressionResult r;
  r.names = design.names;
  r.n = n;
  r.k = k;
  r.robust = robust;
  r.r2 = sst > 0.0 ? 1.0 - ssr / sst : 0.0;
  r.adj_r2 = 1.0 - (1.0 - r.r2) * static_cast<double>(n - 1) / dof;
  r.estimates.resize(k);
  r.std_errors.resize(k);
  r.t_values.resize(k);
  r.p_values.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    r.estimates[j] = coef(static_cast<long>(j));
    const double var_j = cov(static_cast<long>(j), static_cast<long>(j));
    r.std_errors[j] = var_j > 0.0 ? std::sqrt(var_j) : 0.0;
    if (r.std_errors[j] > 0.0) {
      r.t_values[j] = r.estimates[j] / r.std_errors[j];
      r.p_values[j] = student_t_two_sided(r.t_values[j], dof);
    } else {
      r.t_values[j] = 0.0;
      r.p_values[j] = 1.0;
    }
  }
  return r;
}

std::string significance_stars(double p_value) {
  if (p_value < 0.01) return "***";
  if (p_value < 0.05) return "**";
  if (p_value < 0.10) return "*";
  return "";
}

std::string render_regression_table(const RegressionResult& r) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %12s %12s %9s %9s\n", "variable",
                "estimate", "std error", "t-value", "p-value");
  out += line;
  out += std::string(58, '-') + "\n";
  for (std::size_t j = 0; j < r.names.size(); ++j) {
    std::snprintf(line, sizeof(line), "%-10s %12.4f %12.4f %9.3f %9.3f %s\n",
                  r.names[j].c_str(), r.estimates[j], r.std_errors[j],
                  r.t_values[j], r.p_values[j],
                  significance_stars(r.p_values[j]).c_str());
    out += line;
  }
  out += std::string(58, '-') + "\n";
  std::snprintf(line, sizeof(line),
                "n = %zu   R^2 = %.4f   adj R^2 = %.4f   errors: %s\n", r.n,
                r.r2, r.adj_r2, r.robust ? "HC1 robust" : "homoskedastic");
  out += line;
  return out;
}

}  // namespace volstudy
