#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "repan/partial_conjunction.hpp"
#include "repan/pvalue_tests.hpp"

namespace repan {

enum class InputKind { pvalues, paired_scores };
enum class InputFormat { csv, json };
enum class DeclaredTest { bootstrap, wilcoxon, mcnemar, steiger };

struct PValueRow {
  std::string dataset;
  double p_value = 0.0;
};

struct ScoreRow {
  std::string dataset;
  std::string unit_id;
  double score_a = 0.0;
  double score_b = 0.0;
  std::optional<double> gold;  // required only by the Steiger test
};

/// A parsed and validated input file.
///
/// CSV headers: `dataset,p_value` for p-value inputs, or
/// `dataset,unit_id,score_a,score_b[,gold]` for paired scores. JSON inputs
/// are either an array of row objects or `{"rows": [...]}`, optionally with
/// `"test"` and `"test_params"` (numeric map) at the top level.
struct InputDocument {
  InputKind kind = InputKind::pvalues;
  std::vector<PValueRow> p_rows;
  std::vector<ScoreRow> score_rows;
  bool has_gold = false;
  std::optional<DeclaredTest> declared_test;
  std::map<std::string, double> test_params;

  /// pvalues kind only: the validated comparison set, rows in file order.
  ComparisonSet to_comparison_set(Dependence dependence) const;

  /// paired_scores kind only: per-dataset scores in first-appearance order.
  std::vector<std::pair<std::string, PairedScores>> grouped_scores() const;

  /// Gold values aligned with grouped_scores(), when the column is present.
  std::vector<std::vector<double>> grouped_gold() const;
};

/// Chooses json for a ".json" extension, csv otherwise.
InputFormat detect_format(const std::string& path);

/// Parses and validates. Errors carry the file, 1-based data row and the
/// offending column. Duplicate datasets (p-value inputs), duplicate
/// (dataset, unit_id) pairs and p-values outside [0, 1] are rejected.
InputDocument parse_input(const std::string& path, InputFormat format);

}  // namespace repan
