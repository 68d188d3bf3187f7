// Deterministic Nelder-Mead minimizer. Standard reflect/expand/contract/shrink
// coefficients; the simplex is built from fixed per-coordinate steps so the
// whole search is reproducible.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace volstudy {

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

inline NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, std::vector<double> steps, double tol,
    int max_iterations) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += steps[i];
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  NelderMeadResult result;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[n];
    const std::size_t second_worst = order[n - 1];

    if (std::abs(fv[worst] - fv[best]) <=
        tol * (std::abs(fv[best]) + tol)) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double coeff) {
      std::vector<double> p(n);
      for (std::size_t d = 0; d < n; ++d) {
        p[d] = centroid[d] + coeff * (simplex[worst][d] - centroid[d]);
      }
      return p;
    };

    const auto reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr < fv[best]) {
      const auto expanded = blend(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        fv[worst] = fe;
      } else {
        simplex[worst] = reflected;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second_worst]) {
      simplex[worst] = reflected;
      fv[worst] = fr;
      continue;
    }
    const auto contracted = blend(fr < fv[worst] ? -0.5 : 0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, fv[worst])) {
      simplex[worst] = contracted;
      fv[worst] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d) {
        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
      }
      fv[i] = f(simplex[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (fv[i] < fv[best]) best = i;
  }
  result.x = simplex[best];
  result.fx = fv[best];
  result.iterations = iter;
  return result;
}

}  // namespace volstudy
