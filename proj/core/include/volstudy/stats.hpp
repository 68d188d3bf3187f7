// Small numerics shared across modules: sample moments, regularized
// incomplete gamma/beta, and the distribution tails built on them.
#pragma once

#include <cstddef>
#include <span>

namespace volstudy {

double mean(std::span<const double> x);

// Unbiased sample variance (denominator n-1); requires n >= 2.
double sample_variance(std::span<const double> x);

// Regularized incomplete gamma: P(a, x) lower, Q(a, x) upper; a > 0, x >= 0.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper-tail probability of a chi-square with `df` degrees of freedom.
double chi2_sf(double x, double df);

// Regularized incomplete beta I_x(a, b); a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

// Student-t upper tail P(T > t) and the two-sided p-value for |T| >= |t|.
double student_t_sf(double t, double df);
double student_t_two_sided(double t, double df);

}  // namespace volstudy
