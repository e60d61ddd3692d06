#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "repan/report.hpp"

namespace repan {

namespace {

ComparisonSet make_set(std::vector<std::string> names, std::vector<double> ps,
                       Dependence dep) {
  ComparisonSet set;
  set.dataset_names = std::move(names);
  set.p_values = std::move(ps);
  set.dependence = dep;
  set.validate();
  return set;
}

// Reference comparisons, p-values transcribed exactly as published,
// including exact zeros and scientific notation.
const std::map<std::string, ComparisonSet>& registry() {
  static const std::map<std::string, ComparisonSet> fixtures = {
      {"parsing_mate_spacy",
       make_set({"BC", "BN", "MZ", "NW", "PT", "TC", "WB"},
                {1e-4, 1e-4, 0.0, 0.0, 2e-4, 9e-4, 0.0},
                Dependence::independent)},
      {"parsing_mate_redshift",
       make_set({"BC", "BN", "MZ", "NW", "PT", "TC", "WB"},
                {0.0979, 0.1662, 0.0046, 0.0376, 0.0969, 0.0912, 0.0823},
                Dependence::independent)},
      {"pos_mimick_chartag",
       make_set({"Kazakh", "Tamil", "Latvian", "Vietnamese", "Hungarian",
                 "Turkish", "Greek", "Bulgarian", "Swedish", "Basque",
                 "Russian", "Danish", "Indonesian", "Chinese", "Persian",
                 "Hebrew", "Romanian", "English", "Arabic", "Hindi",
                 "Italian", "Spanish", "Czech"},
                {0.0944, 0.0001, 0.0623, 0.0359, 1.12e-08, 0.1461, 0.0104,
                 0.1957, 0.0939, 3.87e-10, 0.0081, 0.1016, 0.0008, 0.0,
                 0.4450, 0.1025, 0.2198, 0.0208, 0.0731, 0.0288, 0.4812,
                 0.1176, 2.91e-05},
                Dependence::independent)},
      {"sentiment_ae_msda",
       make_set({"B->K", "B->D", "B->E", "K->B", "K->D", "K->E", "D->B",
                 "D->K", "D->E", "E->B", "E->K", "E->D"},
                {0.0268, 0.0011, 0.0119, 0.0038, 1.9e-06, 0.018, 0.0186,
                 0.0014, 0.0011, 0.4823, 0.9507, 0.0003},
                Dependence::dependent_unknown)},
      {"wordsim_w2v_glove",
       make_set({"WS353", "WS353-SIM", "WS353-REL", "MC-30", "RG-65", "RW",
                 "MEN", "MTurk-287", "MTurk-771", "YP-130", "SimLex999",
                 "Verb-143"},
                {2e-5, 0.0, 0.2123, 0.0001, 0.3053, 0.2426, 0.0021, 0.2076,
                 0.0425, 0.0, 0.0015, 0.0431},
                Dependence::dependent_unknown)},
  };
  return fixtures;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, set] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

const ComparisonSet& fixture(const std::string& name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) {
    std::string known;
    for (const auto& n : fixture_names()) {
      if (!known.empty()) known += ", ";
      known += n;
    }
    throw std::invalid_argument("unknown fixture '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

ReplicabilityReport reproduce_fixture(const std::string& name, double alpha) {
  return analyze(fixture(name), alpha, name);
}

}  // namespace repan
