// Moments and distribution tails, cross-checked against an independent
// quadrature oracle and externally tabulated values.
#include <cmath>
#include <vector>

#include "doctest.h"
#include "volstudy/errors.hpp"
#include "volstudy/stats.hpp"

using namespace volstudy;

namespace {

// Composite Simpson integration of the chi-square density on [x, cutoff];
// independent of the incomplete-gamma route used by the implementation.
double chi2_sf_quadrature(double x, double df) {
  const auto pdf = [df](double t) {
    if (t <= 0.0) return 0.0;
    const double half = 0.5 * df;
    return std::exp((half - 1.0) * std::log(t) - 0.5 * t - half * std::log(2.0) -
                    std::lgamma(half));
  };
  const double cutoff = df + 60.0 * std::sqrt(2.0 * df) + 60.0;
  const int steps = 200000;
  const double h = (cutoff - x) / steps;
  double sum = pdf(x) + pdf(cutoff);
  for (int i = 1; i < steps; ++i) {
    sum += pdf(x + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

double student_t_sf_quadrature(double t, double df) {
  const auto pdf = [df](double u) {
    return std::exp(std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                    0.5 * std::log(df * 3.14159265358979323846) -
                    0.5 * (df + 1.0) * std::log1p(u * u / df));
  };
  const double cutoff = std::abs(t) + 400.0;
  const int steps = 400000;
  const double h = (cutoff - t) / steps;
  double sum = pdf(t) + pdf(cutoff);
  for (int i = 1; i < steps; ++i) {
    sum += pdf(t + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("mean and sample variance") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(x) == doctest::Approx(2.5).epsilon(1e-15));
  // Sum of squared deviations 5 over n-1 = 3.
  CHECK(sample_variance(x) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  const std::vector<double> constant{2.0, 2.0, 2.0};
  CHECK(sample_variance(constant) == 0.0);
  CHECK_THROWS_AS(sample_variance(std::vector<double>{1.0}), Error);
}

TEST_CASE("chi-square upper tail matches tabulated values") {
  CHECK(chi2_sf(45.0, 45.0) == doctest::Approx(0.47195896325694053).epsilon(1e-10));
  CHECK(chi2_sf(135.0, 45.0) == doctest::Approx(6.316436053781811e-11).epsilon(1e-8));
  CHECK(chi2_sf(0.5, 1.0) == doctest::Approx(0.47950012218695337).epsilon(1e-10));
  CHECK(chi2_sf(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(chi2_sf(210.0, 189.0) == doctest::Approx(0.14084768875239223).epsilon(1e-10));
  CHECK(chi2_sf(21.0, 8.0) == doctest::Approx(0.007147429634343745).epsilon(1e-10));
}

TEST_CASE("chi-square upper tail matches quadrature oracle") {
  for (const auto& [x, df] : std::vector<std::pair<double, double>>{
           {2.0, 3.0}, {10.0, 10.0}, {45.0, 45.0}, {80.0, 60.0}, {189.0, 189.0}}) {
    CHECK(chi2_sf(x, df) ==
          doctest::Approx(chi2_sf_quadrature(x, df)).epsilon(1e-8));
  }
}

TEST_CASE("chi-square tail basics") {
  CHECK(chi2_sf(0.0, 5.0) == 1.0);
  CHECK(chi2_sf(-1.0, 5.0) == 1.0);
  // Monotone decreasing in the statistic.
  double prev = 1.0;
  for (double x : {1.0, 5.0, 20.0, 100.0}) {
    const double p = chi2_sf(x, 10.0);
    CHECK(p < prev);
    prev = p;
  }
  CHECK_THROWS_AS(chi2_sf(1.0, 0.0), Error);
}

TEST_CASE("student-t tails match tabulated values") {
  CHECK(student_t_sf(2.0, 10.0) ==
        doctest::Approx(0.036694017385370196).epsilon(1e-10));
  CHECK(student_t_two_sided(2.2281388519649385, 10.0) ==
        doctest::Approx(0.05).epsilon(1e-9));
  CHECK(student_t_two_sided(1.5, 21.0) ==
        doctest::Approx(0.1484995801285287).epsilon(1e-10));
  CHECK(student_t_sf(-1.3, 7.0) ==
        doctest::Approx(0.8826160823038114).epsilon(1e-10));
}

TEST_CASE("student-t tail matches quadrature oracle") {
  for (const auto& [t, df] : std::vector<std::pair<double, double>>{
           {0.5, 5.0}, {2.0, 10.0}, {3.0, 27.0}}) {
    CHECK(student_t_sf(t, df) ==
          doctest::Approx(student_t_sf_quadrature(t, df)).epsilon(1e-6));
  }
}

TEST_CASE("student-t symmetry and two-sided relation") {
  for (double t : {0.0, 0.7, 2.5}) {
    CHECK(student_t_sf(t, 12.0) + student_t_sf(-t, 12.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(student_t_two_sided(t, 12.0) ==
          doctest::Approx(2.0 * student_t_sf(std::abs(t), 12.0)).epsilon(1e-12));
  }
}

TEST_CASE("incomplete beta endpoints") {
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(1,1) is the identity.
  CHECK(incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
}
