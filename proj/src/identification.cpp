#include "repan/identification.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace repan {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

// Indices in ascending p-value order, index as tiebreaker. Outputs depend
// only on the p-value multiset, so the tiebreak is observationally inert.
std::vector<std::size_t> ascending_order(const ComparisonSet& set) {
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (set.p_values[a] != set.p_values[b]) return set.p_values[a] < set.p_values[b];
    return a < b;
  });
  return order;
}

RejectionList assemble(const ComparisonSet& set, Procedure procedure,
                       double alpha, const std::vector<double>& thresholds,
                       int reject_upto /* ranks 1..reject_upto rejected */) {
  const auto order = ascending_order(set);
  RejectionList list;
  list.procedure = procedure;
  list.alpha = alpha;
  list.thresholds = thresholds;
  list.entries.reserve(set.size());
  for (std::size_t rank = 1; rank <= set.size(); ++rank) {
    const std::size_t idx = order[rank - 1];
    RejectionEntry entry;
    entry.name = set.dataset_names[idx];
    entry.rank = static_cast<int>(rank);
    entry.p_value = set.p_values[idx];
    entry.threshold = thresholds[rank - 1];
    entry.rejected = static_cast<int>(rank) <= reject_upto;
    if (entry.rejected) list.rejected.push_back(entry.name);
    list.entries.push_back(std::move(entry));
  }
  return list;
}

}  // namespace

RejectionList holm(const ComparisonSet& set, double alpha) {
  check_alpha(alpha);
  set.validate();
  const int n = static_cast<int>(set.size());
  const auto order = ascending_order(set);

  std::vector<double> thresholds(n);
  for (int rank = 1; rank <= n; ++rank) {
    thresholds[rank - 1] = alpha / static_cast<double>(n + 1 - rank);
  }

  // Minimal rank k with p_(k) > alpha/(N+1-k); equality keeps going.
  int stop = n + 1;
  for (int rank = 1; rank <= n; ++rank) {
    if (set.p_values[order[rank - 1]] > thresholds[rank - 1]) {
      stop = rank;
      break;
    }
  }
  return assemble(set, Procedure::holm, alpha, thresholds, stop - 1);
}

RejectionList bonferroni_correction(const ComparisonSet& set, double alpha) {
  check_alpha(alpha);
  set.validate();
  const int n = static_cast<int>(set.size());
  const double cutoff = alpha / static_cast<double>(n);
  const auto order = ascending_order(set);
  int rejected = 0;
  for (int rank = 1; rank <= n; ++rank) {
    if (set.p_values[order[rank - 1]] <= cutoff) rejected = rank;
  }
  return assemble(set, Procedure::bonferroni_correction, alpha,
                  std::vector<double>(n, cutoff), rejected);
}

RejectionList naive_identification(const ComparisonSet& set, double alpha) {
  check_alpha(alpha);
  set.validate();
  const int n = static_cast<int>(set.size());
  const auto order = ascending_order(set);
  int rejected = 0;
  for (int rank = 1; rank <= n; ++rank) {
    if (set.p_values[order[rank - 1]] <= alpha) rejected = rank;
  }
  return assemble(set, Procedure::naive, alpha, std::vector<double>(n, alpha),
                  rejected);
}

}  // namespace repan
