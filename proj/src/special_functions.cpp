#include "repan/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace repan {

namespace {

// Lanczos g=7, n=9. Hand-rolled instead of std::lgamma because glibc's
// lgamma writes the global signgam and this function must be callable from
// any number of threads.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};
constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // ln(2*pi)/2

double ln_gamma_lanczos(double x) {
  // Valid for x >= 0.5; callers reduce smaller arguments.
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
  const double t = x + 6.5;  // g + 0.5
  return kHalfLogTwoPi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

// Lower regularized gamma P(s, x) by series, for x < s + 1.
double gamma_p_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + s * std::log(x) - ln_gamma(s));
}

// Upper regularized gamma Q(s, x) by continued fraction (modified Lentz),
// for x >= s + 1.
double gamma_q_continued_fraction(double s, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + s * std::log(x) - ln_gamma(s));
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("ln_gamma: requires x > 0, got " + std::to_string(x));
  }
  if (x < 0.5) {
    // Gamma(x) = Gamma(x + 1) / x; no cancellation, both terms positive.
    return ln_gamma_lanczos(x + 1.0) - std::log(x);
  }
  return ln_gamma_lanczos(x);
}

double regularized_gamma_upper(double s, double x) {
  if (!(s > 0.0)) {
    throw std::domain_error("regularized_gamma_upper: requires s > 0, got " +
                            std::to_string(s));
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("regularized_gamma_upper: requires x >= 0, got " +
                            std::to_string(x));
  }
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) {
    const double q = 1.0 - gamma_p_series(s, x);
    return std::clamp(q, 0.0, 1.0);
  }
  return std::clamp(gamma_q_continued_fraction(s, x), 0.0, 1.0);
}

double chi_square_sf(double x, int df) {
  if (df < 1) {
    throw std::domain_error("chi_square_sf: requires df >= 1, got " +
                            std::to_string(df));
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("chi_square_sf: requires x >= 0, got " +
                            std::to_string(x));
  }
  return regularized_gamma_upper(0.5 * df, 0.5 * x);
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double std_normal_sf(double z) { return 0.5 * std::erfc(z * M_SQRT1_2); }

double fisher_z(double r) {
  if (!(std::abs(r) < 1.0)) {
    throw std::domain_error("fisher_z: requires |r| < 1, got " +
                            std::to_string(r));
  }
  return std::atanh(r);
}

std::vector<double> rank_average_ties(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("rank_average_ties: empty input");
  }
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share the mean rank; a half-integer, exact.
    const double mean_rank = 0.5 * static_cast<double>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace repan
