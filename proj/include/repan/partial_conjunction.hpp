#pragma once

#include <span>
#include <string>
#include <vector>

namespace repan {

enum class Dependence { independent, dependent_unknown };
enum class CombinationMethod { bonferroni, fisher };
enum class Estimator { count, bonferroni, fisher };

/// Named per-dataset p-values for one A-vs-B comparison. Names are unique,
/// every p lies in [0, 1] (exact 0 and 1 permitted) and N >= 1.
struct ComparisonSet {
  std::vector<std::string> dataset_names;
  std::vector<double> p_values;
  Dependence dependence = Dependence::dependent_unknown;

  std::size_t size() const { return p_values.size(); }
  void validate() const;  // throws std::invalid_argument on violations
};

/// Per-u combined p-values for u = 1..N (stored at index u-1). `monotonized`
/// is the running maximum of `raw`, which makes the rejections nested in u.
struct PartialConjunctionCurve {
  CombinationMethod method = CombinationMethod::bonferroni;
  std::vector<double> raw;
  std::vector<double> monotonized;
};

/// Lower confidence bound on the number of datasets with a true effect.
struct KHat {
  Estimator estimator = Estimator::count;
  int value = 0;
  double alpha = 0.0;
};

/// Combined p-value for "at least u of N effects are real" over p-values
/// sorted nondecreasing; u is 1-based. Bonferroni: min(1, (N-u+1) p_(u)).
double pc_pvalue_bonferroni(std::span<const double> sorted_p, int u);

/// Fisher variant: chi-squared survival of -2 sum_{i=u}^{N} ln p_(i) on
/// 2(N-u+1) degrees of freedom. An exact zero among the summed p-values
/// makes the statistic infinite and the combined p-value 0.
double pc_pvalue_fisher(std::span<const double> sorted_p, int u);

PartialConjunctionCurve build_curve(const ComparisonSet& set,
                                    CombinationMethod method);

/// k_hat = largest u whose monotonized combined p-value is <= alpha (0 if
/// none). Guarantees P(k_hat > k) <= alpha when the combination method is
/// valid for the dependence at hand.
KHat k_hat(const ComparisonSet& set, double alpha, CombinationMethod method);

/// The naive count #{i : p_i <= alpha}. No overestimation guarantee.
KHat k_hat_count(const ComparisonSet& set, double alpha);

}  // namespace repan
