#pragma once

#include <span>
#include <vector>

namespace repan {

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double ln_gamma(double x);

/// Upper regularized incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s),
/// for s > 0 and x >= 0. Q(s, 0) = 1 and Q is nonincreasing in x.
double regularized_gamma_upper(double s, double x);

/// Survival function P(X >= x) of a chi-squared variable with df >= 1
/// degrees of freedom: Q(df/2, x/2).
double chi_square_sf(double x, int df);

/// Standard normal CDF Phi(z) and survival 1 - Phi(z). The survival is
/// evaluated through erfc directly so large z does not cancel.
double std_normal_cdf(double z);
double std_normal_sf(double z);

/// Fisher z-transform atanh(r), defined for |r| < 1.
double fisher_z(double r);

/// Ranks 1..n in input order; tied values share the mean of the ranks they
/// span, so the ranks always sum to n(n+1)/2 exactly.
std::vector<double> rank_average_ties(std::span<const double> values);

}  // namespace repan
