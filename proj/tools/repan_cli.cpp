// repan: replicability analysis for multiple algorithm comparisons.
//
// Subcommands:
//   analyze <file>     per-dataset p-values -> k estimators + Holm list
//   test <scores-file> paired per-unit scores -> p-values -> analysis
//   simulate           null-model exceedance study, JSON output
//   reproduce <name>   run an embedded reference comparison

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repan/input.hpp"
#include "repan/pvalue_tests.hpp"
#include "repan/report.hpp"
#include "repan/rng.hpp"
#include "repan/simulation.hpp"

namespace {

using repan::Alternative;
using repan::Dependence;
using repan::ReportFormat;

struct CommonOpts {
  double alpha = 0.05;
  std::string dependence = "unknown";
  std::string method = "auto";
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--alpha", opts.alpha, "Significance level")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  cmd->add_option("--dependence", opts.dependence,
                  "Dependence assumption across datasets")
      ->check(CLI::IsMember({"independent", "unknown"}))
      ->capture_default_str();
  cmd->add_option("--method", opts.method,
                  "Estimator to headline (auto follows --dependence)")
      ->check(CLI::IsMember({"auto", "bonferroni", "fisher"}))
      ->capture_default_str();
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "markdown"}))
      ->capture_default_str();
}

Dependence parse_dependence(const std::string& s) {
  return s == "independent" ? Dependence::independent
                            : Dependence::dependent_unknown;
}

Alternative parse_alternative(const std::string& s) {
  if (s == "greater") return Alternative::greater;
  if (s == "less") return Alternative::less;
  return Alternative::two_sided;
}

void emit_report(repan::ReplicabilityReport report, const CommonOpts& opts) {
  if (opts.method != "auto") {
    const auto chosen = opts.method == "fisher" ? repan::Estimator::fisher
                                                : repan::Estimator::bonferroni;
    if (chosen != report.recommended_estimator) {
      report.warnings.push_back(
          "--method " + opts.method + " overrides the recommendation for " +
          (report.dependence == Dependence::independent ? std::string("independent")
                                                        : std::string("dependent")) +
          " datasets; the recommended estimator remains " +
          (report.recommended_estimator == repan::Estimator::fisher ? "fisher"
                                                                    : "bonferroni") +
          ".");
    }
    report.recommended_estimator = chosen;
    report.recommended_k = chosen == repan::Estimator::fisher ? report.k_fisher
                                                              : report.k_bonferroni;
  }
  std::cout << repan::render_report(
      report, opts.format == "json" ? ReportFormat::json : ReportFormat::markdown);
}

int run_analyze(const std::string& path, const CommonOpts& opts,
                const std::string& name) {
  const auto doc = repan::parse_input(path, repan::detect_format(path));
  if (doc.kind != repan::InputKind::pvalues) {
    throw std::invalid_argument(
        path + ": holds paired scores; use the 'test' subcommand");
  }
  const auto set = doc.to_comparison_set(parse_dependence(opts.dependence));
  const std::string title = name.empty() ? path : name;
  emit_report(repan::analyze(set, opts.alpha, title), opts);
  return 0;
}

struct TestFlagState {
  bool seed_set = false;
  bool reps_set = false;
  bool bootstrap_size_set = false;
};

int run_test(const std::string& path, const CommonOpts& opts,
             const std::string& test_name, const std::string& alternative,
             std::uint64_t seed, int repetitions, int bootstrap_size,
             const TestFlagState& flags, const std::string& name) {
  const auto doc = repan::parse_input(path, repan::detect_format(path));
  if (doc.kind != repan::InputKind::paired_scores) {
    throw std::invalid_argument(
        path + ": holds p-values; use the 'analyze' subcommand");
  }

  // test_params from a JSON input act as defaults; explicit flags win
  if (const auto it = doc.test_params.find("seed");
      it != doc.test_params.end() && !flags.seed_set) {
    seed = static_cast<std::uint64_t>(it->second);
  }
  if (const auto it = doc.test_params.find("repetitions");
      it != doc.test_params.end() && !flags.reps_set) {
    repetitions = static_cast<int>(it->second);
  }
  if (const auto it = doc.test_params.find("bootstrap_size");
      it != doc.test_params.end() && !flags.bootstrap_size_set) {
    bootstrap_size = static_cast<int>(it->second);
  }

  std::string test = test_name;
  if (test.empty()) {
    if (!doc.declared_test) {
      throw std::invalid_argument("no --test given and the input declares none");
    }
    switch (*doc.declared_test) {
      case repan::DeclaredTest::bootstrap: test = "bootstrap"; break;
      case repan::DeclaredTest::wilcoxon: test = "wilcoxon"; break;
      case repan::DeclaredTest::mcnemar: test = "mcnemar"; break;
      case repan::DeclaredTest::steiger: test = "steiger"; break;
    }
  }
  const Alternative alt = parse_alternative(alternative);

  const auto groups = doc.grouped_scores();
  std::vector<std::vector<double>> gold;
  if (test == "steiger") {
    if (!doc.has_gold) {
      throw std::invalid_argument(
          path + ": the steiger test needs a 'gold' column with the reference scores");
    }
    gold = doc.grouped_gold();
  }

  // Seed substreams by the dataset's rank in name order, so per-dataset
  // p-values do not depend on row order.
  std::vector<std::string> sorted_names;
  for (const auto& [dataset, scores] : groups) sorted_names.push_back(dataset);
  std::sort(sorted_names.begin(), sorted_names.end());
  std::map<std::string, std::uint64_t> seed_of;
  for (std::size_t i = 0; i < sorted_names.size(); ++i) {
    seed_of[sorted_names[i]] = repan::substream_seed(seed, i);
  }

  repan::ComparisonSet set;
  set.dependence = parse_dependence(opts.dependence);
  std::vector<std::string> extra_warnings;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& [dataset, scores] = groups[g];
    double p = 0.0;
    try {
      if (test == "bootstrap") {
        p = repan::paired_bootstrap(scores, bootstrap_size, repetitions,
                                    seed_of.at(dataset));
      } else if (test == "wilcoxon") {
        int zero_diffs = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
          if (scores.scores_a[i] == scores.scores_b[i]) ++zero_diffs;
        }
        if (zero_diffs > 0) {
          extra_warnings.push_back("dataset '" + dataset + "': wilcoxon discarded " +
                                   std::to_string(zero_diffs) + " zero difference(s)");
        }
        p = repan::wilcoxon_signed_rank(scores, alt);
      } else if (test == "mcnemar") {
        repan::ContingencyCounts counts;
        for (std::size_t i = 0; i < scores.size(); ++i) {
          const double a = scores.scores_a[i], b = scores.scores_b[i];
          if ((a != 0.0 && a != 1.0) || (b != 0.0 && b != 1.0)) {
            throw std::invalid_argument("mcnemar needs binary (0/1) scores");
          }
          if (a == 0.0 && b == 0.0) ++counts.n00;
          if (a == 0.0 && b == 1.0) ++counts.n01;
          if (a == 1.0 && b == 0.0) ++counts.n10;
          if (a == 1.0 && b == 1.0) ++counts.n11;
        }
        p = repan::mcnemar(counts);
      } else {  // steiger
        repan::CorrelationTriple triple;
        triple.n = static_cast<int>(scores.size());
        triple.r_jk = repan::spearman_rho(gold[g], scores.scores_a);
        triple.r_jh = repan::spearman_rho(gold[g], scores.scores_b);
        triple.r_kh = repan::spearman_rho(scores.scores_a, scores.scores_b);
        p = repan::steiger_dependent_corr(triple, alt);
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("dataset '" + dataset + "': " + e.what());
    }
    set.dataset_names.push_back(dataset);
    set.p_values.push_back(p);
  }

  const std::string title = name.empty() ? path + " (" + test + ")" : name;
  auto report = repan::analyze(set, opts.alpha, title);
  report.warnings.insert(report.warnings.end(), extra_warnings.begin(),
                         extra_warnings.end());
  emit_report(std::move(report), opts);
  return 0;
}

std::vector<repan::CorrelatedBlock> parse_blocks(const std::string& text) {
  // "34,33:0.2,33:0.5" -> sizes with optional per-block correlation.
  std::vector<repan::CorrelatedBlock> blocks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty()) throw std::invalid_argument("--blocks: empty block entry");
    repan::CorrelatedBlock block;
    const std::size_t colon = item.find(':');
    try {
      block.size = std::stoi(item.substr(0, colon));
      if (colon != std::string::npos) block.rho = std::stod(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("--blocks: cannot parse entry '" + item + "'");
    }
    blocks.push_back(block);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return blocks;
}

int run_simulate(const std::string& blocks_text, int replications, double alpha,
                 std::uint64_t seed, int true_k) {
  repan::SimulationSpec spec;
  spec.blocks = parse_blocks(blocks_text);
  spec.n_hypotheses = 0;
  for (const auto& b : spec.blocks) spec.n_hypotheses += b.size;
  spec.replications = replications;
  spec.alpha = alpha;
  spec.seed = seed;
  spec.true_k = true_k;
  const auto outcome = repan::run_simulation(spec);
  std::cout << repan::render_simulation_outcome(spec, outcome);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replicability analysis for multiple algorithm comparisons"};
  app.require_subcommand(1);

  CommonOpts analyze_opts;
  std::string analyze_path, analyze_name;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "Analyze a file of per-dataset p-values");
  analyze_cmd->add_option("file", analyze_path, "CSV or JSON input")->required();
  analyze_cmd->add_option("--name", analyze_name, "Comparison name for the report");
  add_common(analyze_cmd, analyze_opts);

  CommonOpts test_opts;
  std::string test_path, test_test, test_alternative = "greater", test_title;
  std::uint64_t test_seed = 12345;
  int test_reps = 100000, test_bootstrap_size = 500;
  auto* test_cmd = app.add_subcommand(
      "test", "Compute per-dataset p-values from paired scores, then analyze");
  test_cmd->add_option("file", test_path, "CSV or JSON scores input")->required();
  test_cmd->add_option("--test", test_test, "Significance test to apply")
      ->check(CLI::IsMember({"bootstrap", "wilcoxon", "mcnemar", "steiger"}));
  test_cmd->add_option("--alternative", test_alternative, "Alternative hypothesis")
      ->check(CLI::IsMember({"greater", "less", "two-sided"}))
      ->capture_default_str();
  auto* seed_opt =
      test_cmd->add_option("--seed", test_seed, "Bootstrap seed")->capture_default_str();
  auto* reps_opt = test_cmd->add_option("--reps", test_reps, "Bootstrap repetitions")
                       ->check(CLI::PositiveNumber)
                       ->capture_default_str();
  auto* bsize_opt = test_cmd
                        ->add_option("--bootstrap-size", test_bootstrap_size,
                                     "Units per bootstrap resample")
                        ->check(CLI::PositiveNumber)
                        ->capture_default_str();
  test_cmd->add_option("--name", test_title, "Comparison name for the report");
  add_common(test_cmd, test_opts);

  std::string sim_blocks = "100";
  int sim_reps = 1000, sim_true_k = 0;
  double sim_alpha = 0.05;
  std::uint64_t sim_seed = 12345;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Estimate P(k_hat > true_k) under a block-correlated null");
  sim_cmd->add_option("--blocks", sim_blocks,
                      "Comma-separated blocks, each 'size[:rho]'")
      ->capture_default_str();
  sim_cmd->add_option("--reps", sim_reps, "Replications")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_option("--alpha", sim_alpha, "Significance level")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim_seed, "Simulation seed")->capture_default_str();
  sim_cmd->add_option("--true-k", sim_true_k, "True number of false nulls")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CommonOpts repro_opts;
  std::string repro_name;
  auto* repro_cmd =
      app.add_subcommand("reproduce", "Analyze an embedded reference comparison");
  repro_cmd->add_option("fixture", repro_name, "Fixture name")
      ->required()
      ->check(CLI::IsMember(repan::fixture_names()));
  add_common(repro_cmd, repro_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze_cmd->parsed()) {
      return run_analyze(analyze_path, analyze_opts, analyze_name);
    }
    if (test_cmd->parsed()) {
      TestFlagState flags;
      flags.seed_set = seed_opt->count() > 0;
      flags.reps_set = reps_opt->count() > 0;
      flags.bootstrap_size_set = bsize_opt->count() > 0;
      return run_test(test_path, test_opts, test_test, test_alternative,
                      test_seed, test_reps, test_bootstrap_size, flags, test_title);
    }
    if (sim_cmd->parsed()) {
      return run_simulate(sim_blocks, sim_reps, sim_alpha, sim_seed, sim_true_k);
    }
    if (repro_cmd->parsed()) {
      emit_report(repan::reproduce_fixture(repro_name, repro_opts.alpha), repro_opts);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
