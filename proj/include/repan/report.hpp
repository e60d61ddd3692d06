#pragma once

#include <string>
#include <vector>

#include "repan/identification.hpp"
#include "repan/partial_conjunction.hpp"
#include "repan/simulation.hpp"

namespace repan {

/// One dataset's line in the report, in input order. `holm_threshold` is
/// the cutoff the dataset's p-value was compared against by Holm.
struct DatasetResult {
  std::string name;
  double p_value = 0.0;
  double holm_threshold = 0.0;
  bool rejected = false;

  bool operator==(const DatasetResult&) const = default;
};

struct ReplicabilityReport {
  std::string comparison_name;
  double alpha = 0.0;
  Dependence dependence = Dependence::dependent_unknown;
  int k_count = 0;
  int k_bonferroni = 0;
  int k_fisher = 0;
  Estimator recommended_estimator = Estimator::bonferroni;
  int recommended_k = 0;
  RejectionList holm_rejections;
  std::vector<DatasetResult> per_dataset;
  std::vector<std::string> warnings;

  bool operator==(const ReplicabilityReport&) const = default;
};

enum class ReportFormat { json, markdown };

/// Full analysis of one comparison: all three k_hat estimators, the Holm
/// rejection list, and the estimator recommended by the dependence flag
/// (Fisher only when the datasets are declared independent).
ReplicabilityReport analyze(const ComparisonSet& set, double alpha,
                            const std::string& comparison_name = "");

/// Embedded reference comparisons, retrievable by name.
const std::vector<std::string>& fixture_names();
const ComparisonSet& fixture(const std::string& name);

/// Runs analyze() on an embedded fixture. Throws on unknown names.
ReplicabilityReport reproduce_fixture(const std::string& name, double alpha);

/// json: versioned machine-readable schema that parse_report_json() inverts
/// exactly. markdown: summary table plus the per-dataset Holm table.
std::string render_report(const ReplicabilityReport& report, ReportFormat format);
ReplicabilityReport parse_report_json(const std::string& text);

/// JSON rendering of a simulation outcome (the `simulate` CLI output).
std::string render_simulation_outcome(const SimulationSpec& spec,
                                      const SimulationOutcome& outcome);

}  // namespace repan
