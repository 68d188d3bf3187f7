// Independent long-double OLS used to check the production solver: normal
// equations by Gaussian elimination with partial pivoting, nothing shared
// with the Eigen-based implementation.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ols_oracle {

// Solves a (k x k, row-major) * out = b in place; throws on a zero pivot.
inline std::vector<long double> solve(std::vector<long double> a,
                                      std::vector<long double> b,
                                      std::size_t k) {
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::fabs(static_cast<double>(a[r * k + col])) >
          std::fabs(static_cast<double>(a[pivot * k + col]))) {
        pivot = r;
      }
    }
    if (a[pivot * k + col] == 0.0L) {
      throw std::runtime_error("oracle: singular normal equations");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(a[col * k + c], a[pivot * k + c]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < k; ++r) {
      const long double f = a[r * k + col] / a[col * k + col];
      for (std::size_t c = col; c < k; ++c) a[r * k + c] -= f * a[col * k + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<long double> out(k);
  for (std::size_t col = k; col-- > 0;) {
    long double s = b[col];
    for (std::size_t c = col + 1; c < k; ++c) s -= a[col * k + c] * out[c];
    out[col] = s / a[col * k + col];
  }
  return out;
}

struct Fit {
  std::vector<long double> coef;
  std::vector<long double> std_errors;
  std::vector<long double> t_values;
  long double r2 = 0.0L;
  long double adj_r2 = 0.0L;
};

// Homoskedastic OLS on a row-major n x k design.
inline Fit fit(const std::vector<double>& x, const std::vector<double>& y,
               std::size_t n, std::size_t k) {
  std::vector<long double> xtx(k * k, 0.0L), xty(k, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      xty[a] += static_cast<long double>(x[i * k + a]) * y[i];
      for (std::size_t b = 0; b < k; ++b) {
        xtx[a * k + b] += static_cast<long double>(x[i * k + a]) * x[i * k + b];
      }
    }
  }
  Fit out;
  out.coef = solve(xtx, xty, k);

  long double ssr = 0.0L, sum_y = 0.0L;
  for (std::size_t i = 0; i < n; ++i) sum_y += y[i];
  const long double y_mean = sum_y / static_cast<long double>(n);
  long double sst = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double fitv = 0.0L;
    for (std::size_t a = 0; a < k; ++a) fitv += out.coef[a] * x[i * k + a];
    const long double e = static_cast<long double>(y[i]) - fitv;
    ssr += e * e;
    const long double d = static_cast<long double>(y[i]) - y_mean;
    sst += d * d;
  }
  const long double dof = static_cast<long double>(n - k);

  // Diagonal of (X'X)^-1 column by column.
  out.std_errors.resize(k);
  out.t_values.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<long double> e(k, 0.0L);
    e[j] = 1.0L;
    const auto col = solve(xtx, e, k);
    const long double var_j = ssr / dof * col[j];
    out.std_errors[j] = var_j > 0.0L ? std::sqrt(var_j) : 0.0L;
    out.t_values[j] =
        out.std_errors[j] > 0.0L ? out.coef[j] / out.std_errors[j] : 0.0L;
  }
  out.r2 = sst > 0.0L ? 1.0L - ssr / sst : 0.0L;
  out.adj_r2 = 1.0L - (1.0L - out.r2) * static_cast<long double>(n - 1) / dof;
  return out;
}

}  // namespace ols_oracle
