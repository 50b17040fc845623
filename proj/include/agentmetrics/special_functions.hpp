#pragma once

// Distribution tails used by the statistics suite. Accuracy target is 1e-6
// absolute in probability for the argument ranges met in practice.
namespace agentmetrics::special {

/// Regularized incomplete beta I_x(a, b); a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);
/// Regularized lower incomplete gamma P(a, x); a > 0, x >= 0.
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

double normal_cdf(double z);

/// P(F > f) for the F distribution with (d1, d2) degrees of freedom.
double f_sf(double f, double d1, double d2);
/// P(X > x) for chi-square with df degrees of freedom.
double chi2_sf(double x, double df);
/// P(|T| > |t|) for Student t with df degrees of freedom.
double t_two_sided(double t, double df);

/// CDF of the studentized range for k means and df error degrees of
/// freedom, by Gauss-Legendre quadrature of the range distribution over the
/// scaled chi distribution. df <= 0 means infinite df.
double studentized_range_cdf(double q, int k, double df);
double studentized_range_sf(double q, int k, double df);
/// Quantile: smallest q with cdf(q) >= p, to about 1e-7.
double studentized_range_quantile(double p, int k, double df);

}  // namespace agentmetrics::special
