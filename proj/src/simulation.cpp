#include "repan/simulation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "repan/rng.hpp"
#include "repan/special_functions.hpp"

namespace repan {

void SimulationSpec::validate() const {
  if (n_hypotheses < 1) {
    throw std::invalid_argument("SimulationSpec: n_hypotheses must be >= 1");
  }
  if (replications < 1) {
    throw std::invalid_argument("SimulationSpec: replications must be >= 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("SimulationSpec: alpha must lie in (0, 1)");
  }
  if (true_k < 0 || true_k > n_hypotheses) {
    throw std::invalid_argument("SimulationSpec: true_k must lie in [0, n_hypotheses]");
  }
  if (blocks.empty()) {
    throw std::invalid_argument("SimulationSpec: need at least one block");
  }
  int total = 0;
  for (const auto& block : blocks) {
    if (block.size < 1) {
      throw std::invalid_argument("SimulationSpec: block sizes must be >= 1");
    }
    if (!(block.rho >= 0.0 && block.rho < 1.0)) {
      throw std::invalid_argument("SimulationSpec: block rho must lie in [0, 1)");
    }
    total += block.size;
  }
  if (total != n_hypotheses) {
    throw std::invalid_argument("SimulationSpec: block sizes sum to " +
                                std::to_string(total) + ", expected " +
                                std::to_string(n_hypotheses));
  }
}

std::vector<double> generate_null_zscores(const SimulationSpec& spec,
                                          int replication_index) {
  spec.validate();
  if (replication_index < 0 || replication_index >= spec.replications) {
    throw std::out_of_range("generate_null_zscores: replication index " +
                            std::to_string(replication_index) + " out of range");
  }
  Rng rng(substream_seed(spec.seed, static_cast<std::uint64_t>(replication_index)));
  std::vector<double> z;
  z.reserve(spec.n_hypotheses);
  for (const auto& block : spec.blocks) {
    const double shared = rng.next_gaussian();  // drawn even at rho = 0
    const double w_shared = std::sqrt(block.rho);
    const double w_own = std::sqrt(1.0 - block.rho);
    for (int i = 0; i < block.size; ++i) {
      z.push_back(w_shared * shared + w_own * rng.next_gaussian());
    }
  }
  return z;
}

std::vector<double> generate_null_pvalues(const SimulationSpec& spec,
                                          int replication_index) {
  std::vector<double> p = generate_null_zscores(spec, replication_index);
  for (double& v : p) v = std_normal_sf(v);
  return p;
}

SimulationOutcome run_simulation(const SimulationSpec& spec) {
  spec.validate();

  ComparisonSet set;
  set.dataset_names.reserve(spec.n_hypotheses);
  for (int i = 0; i < spec.n_hypotheses; ++i) {
    set.dataset_names.push_back("h" + std::to_string(i + 1));
  }
  set.dependence = Dependence::dependent_unknown;

  long long over_count = 0, over_bonferroni = 0, over_fisher = 0;
  for (int rep = 0; rep < spec.replications; ++rep) {
    set.p_values = generate_null_pvalues(spec, rep);
    if (k_hat_count(set, spec.alpha).value > spec.true_k) ++over_count;
    if (k_hat(set, spec.alpha, CombinationMethod::bonferroni).value > spec.true_k) {
      ++over_bonferroni;
    }
    if (k_hat(set, spec.alpha, CombinationMethod::fisher).value > spec.true_k) {
      ++over_fisher;
    }
  }

  SimulationOutcome outcome;
  outcome.replications_run = spec.replications;
  outcome.seed = spec.seed;
  const double reps = static_cast<double>(spec.replications);
  outcome.exceedance[Estimator::count] = over_count / reps;
  outcome.exceedance[Estimator::bonferroni] = over_bonferroni / reps;
  outcome.exceedance[Estimator::fisher] = over_fisher / reps;
  return outcome;
}

}  // namespace repan
