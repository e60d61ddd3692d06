#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "repan/partial_conjunction.hpp"

namespace repan {

/// A group of test statistics sharing pairwise correlation rho, realized by
/// a single common Gaussian factor: Z_i = sqrt(rho) Z0 + sqrt(1-rho) xi_i.
/// rho = 0 reduces to independent draws. Marginals stay standard normal, so
/// the null p-values 1 - Phi(Z_i) stay Uniform(0, 1).
struct CorrelatedBlock {
  int size = 0;
  double rho = 0.0;  // in [0, 1)
};

struct SimulationSpec {
  int n_hypotheses = 0;
  int replications = 0;
  double alpha = 0.05;
  int true_k = 0;  // number of genuinely false nulls (0 = global null)
  std::vector<CorrelatedBlock> blocks;
  std::uint64_t seed = 0;

  void validate() const;  // block sizes must sum to n_hypotheses
};

/// Estimated exceedance probabilities P(k_hat > true_k) per estimator.
/// Deterministic given the spec, independent of execution order.
struct SimulationOutcome {
  std::map<Estimator, double> exceedance;
  int replications_run = 0;
  std::uint64_t seed = 0;
};

/// The correlated normal draws for one replication. The substream is
/// derived from (spec.seed, replication_index) alone.
std::vector<double> generate_null_zscores(const SimulationSpec& spec,
                                          int replication_index);

/// One-sided null p-values 1 - Phi(Z_i) for one replication.
std::vector<double> generate_null_pvalues(const SimulationSpec& spec,
                                          int replication_index);

/// Runs all replications, computing k_hat_count, k_hat Bonferroni and
/// k_hat Fisher at spec.alpha for each, and returns the frequency with
/// which each estimator exceeded true_k.
SimulationOutcome run_simulation(const SimulationSpec& spec);

}  // namespace repan
