#pragma once

#include <string>
#include <vector>

#include "repan/partial_conjunction.hpp"

namespace repan {

enum class Procedure { holm, bonferroni_correction, naive };

/// One dataset's line in the stopping-rule audit trail, in rank order.
struct RejectionEntry {
  std::string name;
  int rank = 0;  // 1-based position in ascending p-value order
  double p_value = 0.0;
  double threshold = 0.0;  // the cutoff this p-value was compared against
  bool rejected = false;

  bool operator==(const RejectionEntry&) const = default;
};

/// Datasets identified as showing a significant effect. `rejected` lists
/// names in ascending p-value order; `thresholds` holds the per-rank
/// cutoffs actually applied (rank k at index k-1).
struct RejectionList {
  Procedure procedure = Procedure::holm;
  double alpha = 0.0;
  std::vector<std::string> rejected;
  std::vector<double> thresholds;
  std::vector<RejectionEntry> entries;

  bool operator==(const RejectionList&) const = default;
};

/// Holm step-down procedure: sorts p ascending, finds the minimal k with
/// p_(k) > alpha / (N+1-k), rejects everything ranked below k (all, if no
/// such k). Controls FWER at alpha under arbitrary dependence. Equality at
/// a threshold rejects: the stopping condition is strict.
RejectionList holm(const ComparisonSet& set, double alpha);

/// Plain Bonferroni correction: rejects exactly {i : p_i <= alpha / N}.
RejectionList bonferroni_correction(const ComparisonSet& set, double alpha);

/// Per-dataset testing at the nominal level: {i : p_i <= alpha}. Carries no
/// FWER guarantee; reports must label it as such.
RejectionList naive_identification(const ComparisonSet& set, double alpha);

}  // namespace repan
