#include "repan/partial_conjunction.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "repan/special_functions.hpp"

namespace repan {

void ComparisonSet::validate() const {
  if (dataset_names.size() != p_values.size()) {
    throw std::invalid_argument("ComparisonSet: names and p-values must have equal length");
  }
  if (p_values.empty()) {
    throw std::invalid_argument("ComparisonSet: need at least one dataset");
  }
  std::set<std::string> seen;
  for (const auto& name : dataset_names) {
    if (!seen.insert(name).second) {
      throw std::invalid_argument("ComparisonSet: duplicate dataset name '" + name + "'");
    }
  }
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("ComparisonSet: p-value " + std::to_string(p) +
                                  " outside [0, 1]");
    }
  }
}

namespace {

void check_sorted_pvalues(std::span<const double> sorted_p, int u) {
  if (sorted_p.empty()) {
    throw std::invalid_argument("pc_pvalue: empty p-value sequence");
  }
  if (u < 1 || u > static_cast<int>(sorted_p.size())) {
    throw std::invalid_argument("pc_pvalue: u = " + std::to_string(u) +
                                " out of range [1, " + std::to_string(sorted_p.size()) + "]");
  }
  if (!std::is_sorted(sorted_p.begin(), sorted_p.end())) {
    throw std::invalid_argument("pc_pvalue: p-values must be sorted nondecreasing");
  }
  for (double p : sorted_p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("pc_pvalue: p-value " + std::to_string(p) +
                                  " outside [0, 1]");
    }
  }
}

double fisher_tail(double neg_two_log_sum, int combined) {
  return chi_square_sf(neg_two_log_sum, 2 * combined);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

}  // namespace

double pc_pvalue_bonferroni(std::span<const double> sorted_p, int u) {
  check_sorted_pvalues(sorted_p, u);
  const int n = static_cast<int>(sorted_p.size());
  return std::min(1.0, static_cast<double>(n - u + 1) * sorted_p[u - 1]);
}

double pc_pvalue_fisher(std::span<const double> sorted_p, int u) {
  check_sorted_pvalues(sorted_p, u);
  const int n = static_cast<int>(sorted_p.size());
  double log_sum = 0.0;
  for (int i = u - 1; i < n; ++i) {
    if (sorted_p[i] == 0.0) return 0.0;  // infinite statistic
    log_sum += std::log(sorted_p[i]);
  }
  return fisher_tail(-2.0 * log_sum, n - u + 1);
}

PartialConjunctionCurve build_curve(const ComparisonSet& set,
                                    CombinationMethod method) {
  set.validate();
  std::vector<double> sp = set.p_values;
  std::sort(sp.begin(), sp.end());
  const int n = static_cast<int>(sp.size());

  PartialConjunctionCurve curve;
  curve.method = method;
  curve.raw.resize(n);
  if (method == CombinationMethod::bonferroni) {
    for (int u = 1; u <= n; ++u) {
      curve.raw[u - 1] = std::min(1.0, static_cast<double>(n - u + 1) * sp[u - 1]);
    }
  } else {
    // Suffix log-sums from the top so each u costs one survival evaluation.
    double log_sum = 0.0;
    int zeros_from_here = 0;
    for (int u = n; u >= 1; --u) {
      if (sp[u - 1] == 0.0) {
        ++zeros_from_here;
      } else {
        log_sum += std::log(sp[u - 1]);
      }
      curve.raw[u - 1] = zeros_from_here > 0
                             ? 0.0
                             : fisher_tail(-2.0 * log_sum, n - u + 1);
    }
  }

  curve.monotonized.resize(n);
  double running = 0.0;
  for (int u = 1; u <= n; ++u) {
    running = std::max(running, curve.raw[u - 1]);
    curve.monotonized[u - 1] = running;
  }
  return curve;
}

KHat k_hat(const ComparisonSet& set, double alpha, CombinationMethod method) {
  check_alpha(alpha);
  const PartialConjunctionCurve curve = build_curve(set, method);
  int k = 0;
  for (std::size_t u = 0; u < curve.monotonized.size(); ++u) {
    if (curve.monotonized[u] <= alpha) {
      k = static_cast<int>(u) + 1;
    } else {
      break;  // running maximum only grows
    }
  }
  return KHat{method == CombinationMethod::bonferroni ? Estimator::bonferroni
                                                      : Estimator::fisher,
              k, alpha};
}

KHat k_hat_count(const ComparisonSet& set, double alpha) {
  check_alpha(alpha);
  set.validate();
  int k = 0;
  for (double p : set.p_values) {
    if (p <= alpha) ++k;
  }
  return KHat{Estimator::count, k, alpha};
}

}  // namespace repan
