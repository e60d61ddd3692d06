#include "repan/report.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace repan {

namespace {

constexpr int kSchemaVersion = 1;

std::string to_string(Dependence d) {
  return d == Dependence::independent ? "independent" : "dependent_unknown";
}

Dependence dependence_from_string(const std::string& s) {
  if (s == "independent") return Dependence::independent;
  if (s == "dependent_unknown") return Dependence::dependent_unknown;
  throw std::invalid_argument("unknown dependence '" + s + "'");
}

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::count: return "count";
    case Estimator::bonferroni: return "bonferroni";
    case Estimator::fisher: return "fisher";
  }
  throw std::logic_error("unreachable");
}

Estimator estimator_from_string(const std::string& s) {
  if (s == "count") return Estimator::count;
  if (s == "bonferroni") return Estimator::bonferroni;
  if (s == "fisher") return Estimator::fisher;
  throw std::invalid_argument("unknown estimator '" + s + "'");
}

std::string to_string(Procedure p) {
  switch (p) {
    case Procedure::holm: return "holm";
    case Procedure::bonferroni_correction: return "bonferroni_correction";
    case Procedure::naive: return "naive";
  }
  throw std::logic_error("unreachable");
}

Procedure procedure_from_string(const std::string& s) {
  if (s == "holm") return Procedure::holm;
  if (s == "bonferroni_correction") return Procedure::bonferroni_correction;
  if (s == "naive") return Procedure::naive;
  throw std::invalid_argument("unknown procedure '" + s + "'");
}

nlohmann::json rejection_list_to_json(const RejectionList& list) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : list.entries) {
    entries.push_back({{"name", e.name},
                       {"rank", e.rank},
                       {"p_value", e.p_value},
                       {"threshold", e.threshold},
                       {"rejected", e.rejected}});
  }
  return {{"procedure", to_string(list.procedure)},
          {"alpha", list.alpha},
          {"rejected", list.rejected},
          {"thresholds", list.thresholds},
          {"entries", entries}};
}

RejectionList rejection_list_from_json(const nlohmann::json& j) {
  RejectionList list;
  list.procedure = procedure_from_string(j.at("procedure").get<std::string>());
  list.alpha = j.at("alpha").get<double>();
  list.rejected = j.at("rejected").get<std::vector<std::string>>();
  list.thresholds = j.at("thresholds").get<std::vector<double>>();
  for (const auto& je : j.at("entries")) {
    RejectionEntry e;
    e.name = je.at("name").get<std::string>();
    e.rank = je.at("rank").get<int>();
    e.p_value = je.at("p_value").get<double>();
    e.threshold = je.at("threshold").get<double>();
    e.rejected = je.at("rejected").get<bool>();
    list.entries.push_back(std::move(e));
  }
  return list;
}

std::string format_p(double p) {
  std::ostringstream os;
  if (p != 0.0 && p < 1e-4) {
    os.precision(3);
    os << std::scientific << p;
  } else {
    os.precision(6);
    os << std::defaultfloat << p;
  }
  return os.str();
}

std::string render_markdown(const ReplicabilityReport& r) {
  std::ostringstream os;
  const std::string title = r.comparison_name.empty() ? "comparison" : r.comparison_name;
  os << "# Replicability analysis: " << title << "\n\n";
  os << "- alpha: " << format_p(r.alpha) << "\n";
  os << "- dependence: " << to_string(r.dependence) << "\n";
  os << "- datasets: " << r.per_dataset.size() << "\n\n";

  const std::string marker_b = r.recommended_estimator == Estimator::bonferroni ? " (recommended)" : "";
  const std::string marker_f = r.recommended_estimator == Estimator::fisher ? " (recommended)" : "";
  os << "| estimator | k | note |\n|---|---:|---|\n";
  os << "| count | " << r.k_count << " | no FWER guarantee |\n";
  os << "| bonferroni" << marker_b << " | " << r.k_bonferroni
     << " | valid under any dependence |\n";
  os << "| fisher" << marker_f << " | " << r.k_fisher
     << " | requires independent datasets |\n\n";
  os << "With confidence " << format_p(1.0 - r.alpha) << ", algorithm A outperforms B on at least "
     << r.recommended_k << " of " << r.per_dataset.size() << " datasets ("
     << to_string(r.recommended_estimator) << " estimator).\n\n";

  os << "## Per-dataset results (Holm procedure)\n\n";
  os << "| dataset | p-value | holm threshold | significant |\n";
  os << "|---|---:|---:|:---:|\n";
  for (const auto& d : r.per_dataset) {
    os << "| " << d.name << " | " << format_p(d.p_value) << " | "
       << format_p(d.holm_threshold) << " | " << (d.rejected ? "*" : "") << " |\n";
  }
  os << "\nIdentified datasets: ";
  if (r.holm_rejections.rejected.empty()) {
    os << "none";
  } else {
    for (std::size_t i = 0; i < r.holm_rejections.rejected.size(); ++i) {
      if (i) os << ", ";
      os << r.holm_rejections.rejected[i];
    }
  }
  os << "\n";

  if (!r.warnings.empty()) {
    os << "\n## Warnings\n\n";
    for (const auto& w : r.warnings) os << "- " << w << "\n";
  }
  return os.str();
}

}  // namespace

ReplicabilityReport analyze(const ComparisonSet& set, double alpha,
                            const std::string& comparison_name) {
  set.validate();
  ReplicabilityReport r;
  r.comparison_name = comparison_name;
  r.alpha = alpha;
  r.dependence = set.dependence;
  r.k_count = k_hat_count(set, alpha).value;
  r.k_bonferroni = k_hat(set, alpha, CombinationMethod::bonferroni).value;
  r.k_fisher = k_hat(set, alpha, CombinationMethod::fisher).value;
  r.recommended_estimator = set.dependence == Dependence::independent
                                ? Estimator::fisher
                                : Estimator::bonferroni;
  r.recommended_k = r.recommended_estimator == Estimator::fisher ? r.k_fisher
                                                                 : r.k_bonferroni;
  r.holm_rejections = holm(set, alpha);

  std::map<std::string, const RejectionEntry*> by_name;
  for (const auto& e : r.holm_rejections.entries) by_name[e.name] = &e;
  r.per_dataset.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const RejectionEntry& e = *by_name.at(set.dataset_names[i]);
    r.per_dataset.push_back(DatasetResult{set.dataset_names[i],
                                          set.p_values[i], e.threshold,
                                          e.rejected});
  }

  if (set.dependence == Dependence::dependent_unknown &&
      r.k_fisher > r.k_bonferroni) {
    r.warnings.push_back(
        "k_fisher = " + std::to_string(r.k_fisher) + " exceeds k_bonferroni = " +
        std::to_string(r.k_bonferroni) +
        ", but Fisher's combination is only valid for independent datasets; "
        "under unknown dependence report k_bonferroni.");
  }
  for (double p : set.p_values) {
    if (p == 0.0) {
      r.warnings.push_back(
          "input contains p-values equal to 0; they are treated as exact "
          "zeros, which may reflect rounding in the source data.");
      break;
    }
  }
  return r;
}

std::string render_report(const ReplicabilityReport& r, ReportFormat format) {
  if (format == ReportFormat::markdown) return render_markdown(r);
  nlohmann::json per_dataset = nlohmann::json::array();
  for (const auto& d : r.per_dataset) {
    per_dataset.push_back({{"name", d.name},
                           {"p_value", d.p_value},
                           {"holm_threshold", d.holm_threshold},
                           {"rejected", d.rejected}});
  }
  const nlohmann::json j = {
      {"schema_version", kSchemaVersion},
      {"comparison_name", r.comparison_name},
      {"alpha", r.alpha},
      {"dependence", to_string(r.dependence)},
      {"k_count", r.k_count},
      {"k_bonferroni", r.k_bonferroni},
      {"k_fisher", r.k_fisher},
      {"recommended_estimator", to_string(r.recommended_estimator)},
      {"recommended_k", r.recommended_k},
      {"holm_rejections", rejection_list_to_json(r.holm_rejections)},
      {"per_dataset", per_dataset},
      {"warnings", r.warnings},
  };
  return j.dump(2) + "\n";
}

ReplicabilityReport parse_report_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("schema_version").get<int>() != kSchemaVersion) {
    throw std::invalid_argument("unsupported report schema_version");
  }
  ReplicabilityReport r;
  r.comparison_name = j.at("comparison_name").get<std::string>();
  r.alpha = j.at("alpha").get<double>();
  r.dependence = dependence_from_string(j.at("dependence").get<std::string>());
  r.k_count = j.at("k_count").get<int>();
  r.k_bonferroni = j.at("k_bonferroni").get<int>();
  r.k_fisher = j.at("k_fisher").get<int>();
  r.recommended_estimator =
      estimator_from_string(j.at("recommended_estimator").get<std::string>());
  r.recommended_k = j.at("recommended_k").get<int>();
  r.holm_rejections = rejection_list_from_json(j.at("holm_rejections"));
  for (const auto& jd : j.at("per_dataset")) {
    DatasetResult d;
    d.name = jd.at("name").get<std::string>();
    d.p_value = jd.at("p_value").get<double>();
    d.holm_threshold = jd.at("holm_threshold").get<double>();
    d.rejected = jd.at("rejected").get<bool>();
    r.per_dataset.push_back(std::move(d));
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

std::string render_simulation_outcome(const SimulationSpec& spec,
                                      const SimulationOutcome& outcome) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : spec.blocks) {
    blocks.push_back({{"size", b.size}, {"rho", b.rho}});
  }
  const nlohmann::json j = {
      {"schema_version", kSchemaVersion},
      {"spec",
       {{"n_hypotheses", spec.n_hypotheses},
        {"replications", spec.replications},
        {"alpha", spec.alpha},
        {"true_k", spec.true_k},
        {"blocks", blocks},
        {"seed", spec.seed}}},
      {"exceedance",
       {{"count", outcome.exceedance.at(Estimator::count)},
        {"bonferroni", outcome.exceedance.at(Estimator::bonferroni)},
        {"fisher", outcome.exceedance.at(Estimator::fisher)}}},
      {"replications_run", outcome.replications_run},
      {"seed", outcome.seed},
  };
  return j.dump(2) + "\n";
}

}  // namespace repan
