#include "repan/input.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace repan {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Plain comma splitting; field values with embedded commas are not supported.
std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  fields.push_back(trim(current));
  return fields;
}

[[noreturn]] void fail(const std::string& path, int row, const std::string& what) {
  // row 0 marks the header line; data rows are 1-based.
  const std::string where = row == 0 ? "header" : "row " + std::to_string(row);
  throw std::invalid_argument(path + ": " + where + ": " + what);
}

double parse_double(const std::string& path, int row, const std::string& column,
                    const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(path, row, "column '" + column + "': not a number: '" + text + "'");
  }
}

double parse_p_value(const std::string& path, int row, const std::string& text) {
  const double p = parse_double(path, row, "p_value", text);
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(path, row, "column 'p_value': value " + text + " outside [0, 1]");
  }
  return p;
}

void check_duplicates(const std::string& path, const InputDocument& doc) {
  if (doc.kind == InputKind::pvalues) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < doc.p_rows.size(); ++i) {
      if (!seen.insert(doc.p_rows[i].dataset).second) {
        fail(path, static_cast<int>(i) + 1,
             "duplicate dataset '" + doc.p_rows[i].dataset + "'");
      }
    }
  } else {
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < doc.score_rows.size(); ++i) {
      const auto& r = doc.score_rows[i];
      if (!seen.insert({r.dataset, r.unit_id}).second) {
        fail(path, static_cast<int>(i) + 1,
             "duplicate (dataset, unit_id) pair ('" + r.dataset + "', '" +
                 r.unit_id + "')");
      }
    }
  }
}

DeclaredTest declared_test_from_string(const std::string& s) {
  if (s == "bootstrap") return DeclaredTest::bootstrap;
  if (s == "wilcoxon") return DeclaredTest::wilcoxon;
  if (s == "mcnemar") return DeclaredTest::mcnemar;
  if (s == "steiger") return DeclaredTest::steiger;
  throw std::invalid_argument("unknown test '" + s + "'");
}

InputDocument parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");

  std::string line;
  int lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    header = split_line(line);
    break;
  }
  if (header.empty()) throw std::invalid_argument(path + ": empty input");

  InputDocument doc;
  bool is_pvalues;
  if (header == std::vector<std::string>{"dataset", "p_value"}) {
    is_pvalues = true;
    doc.kind = InputKind::pvalues;
  } else if (header == std::vector<std::string>{"dataset", "unit_id", "score_a", "score_b"}) {
    is_pvalues = false;
    doc.kind = InputKind::paired_scores;
  } else if (header == std::vector<std::string>{"dataset", "unit_id", "score_a", "score_b", "gold"}) {
    is_pvalues = false;
    doc.kind = InputKind::paired_scores;
    doc.has_gold = true;
  } else {
    fail(path, 0,
         "expected 'dataset,p_value' or 'dataset,unit_id,score_a,score_b[,gold]', got '" +
             trim(line) + "'");
  }

  const std::size_t expected_cols = is_pvalues ? 2 : (doc.has_gold ? 5 : 4);
  int row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto fields = split_line(line);
    if (fields.size() != expected_cols) {
      fail(path, row,
           "expected " + std::to_string(expected_cols) + " columns, got " +
               std::to_string(fields.size()));
    }
    if (is_pvalues) {
      if (fields[0].empty()) fail(path, row, "column 'dataset': empty");
      doc.p_rows.push_back({fields[0], parse_p_value(path, row, fields[1])});
    } else {
      if (fields[0].empty()) fail(path, row, "column 'dataset': empty");
      if (fields[1].empty()) fail(path, row, "column 'unit_id': empty");
      ScoreRow r;
      r.dataset = fields[0];
      r.unit_id = fields[1];
      r.score_a = parse_double(path, row, "score_a", fields[2]);
      r.score_b = parse_double(path, row, "score_b", fields[3]);
      if (doc.has_gold) r.gold = parse_double(path, row, "gold", fields[4]);
      doc.score_rows.push_back(std::move(r));
    }
  }
  if (row == 0) throw std::invalid_argument(path + ": no data rows");
  check_duplicates(path, doc);
  return doc;
}

InputDocument parse_json_doc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": malformed JSON: " + e.what());
  }

  InputDocument doc;
  nlohmann::json rows;
  if (j.is_array()) {
    rows = j;
  } else if (j.is_object() && j.contains("rows")) {
    rows = j.at("rows");
    if (j.contains("test")) {
      doc.declared_test = declared_test_from_string(j.at("test").get<std::string>());
    }
    if (j.contains("test_params")) {
      for (const auto& [key, value] : j.at("test_params").items()) {
        doc.test_params[key] = value.get<double>();
      }
    }
  } else {
    throw std::invalid_argument(path + ": expected an array of rows or an object with 'rows'");
  }
  if (!rows.is_array() || rows.empty()) {
    throw std::invalid_argument(path + ": no data rows");
  }

  const bool is_pvalues = rows.front().contains("p_value");
  doc.kind = is_pvalues ? InputKind::pvalues : InputKind::paired_scores;
  doc.has_gold = !is_pvalues && rows.front().contains("gold");
  int row = 0;
  for (const auto& jr : rows) {
    ++row;
    try {
      if (is_pvalues) {
        PValueRow r;
        r.dataset = jr.at("dataset").get<std::string>();
        r.p_value = jr.at("p_value").get<double>();
        if (!(r.p_value >= 0.0 && r.p_value <= 1.0)) {
          fail(path, row, "column 'p_value': value outside [0, 1]");
        }
        doc.p_rows.push_back(std::move(r));
      } else {
        ScoreRow r;
        r.dataset = jr.at("dataset").get<std::string>();
        r.unit_id = jr.at("unit_id").get<std::string>();
        r.score_a = jr.at("score_a").get<double>();
        r.score_b = jr.at("score_b").get<double>();
        if (doc.has_gold) r.gold = jr.at("gold").get<double>();
        doc.score_rows.push_back(std::move(r));
      }
    } catch (const nlohmann::json::exception& e) {
      fail(path, row, std::string("malformed row: ") + e.what());
    }
  }
  check_duplicates(path, doc);
  return doc;
}

}  // namespace

ComparisonSet InputDocument::to_comparison_set(Dependence dependence) const {
  if (kind != InputKind::pvalues) {
    throw std::logic_error("to_comparison_set: document holds paired scores");
  }
  ComparisonSet set;
  set.dependence = dependence;
  for (const auto& r : p_rows) {
    set.dataset_names.push_back(r.dataset);
    set.p_values.push_back(r.p_value);
  }
  set.validate();
  return set;
}

std::vector<std::pair<std::string, PairedScores>> InputDocument::grouped_scores() const {
  if (kind != InputKind::paired_scores) {
    throw std::logic_error("grouped_scores: document holds p-values");
  }
  std::vector<std::pair<std::string, PairedScores>> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& r : score_rows) {
    auto [it, inserted] = index.try_emplace(r.dataset, groups.size());
    if (inserted) groups.emplace_back(r.dataset, PairedScores{});
    PairedScores& ps = groups[it->second].second;
    ps.unit_ids.push_back(r.unit_id);
    ps.scores_a.push_back(r.score_a);
    ps.scores_b.push_back(r.score_b);
  }
  for (auto& [name, ps] : groups) {
    try {
      ps.validate();
    } catch (const std::exception& e) {
      throw std::invalid_argument("dataset '" + name + "': " + e.what());
    }
  }
  return groups;
}

std::vector<std::vector<double>> InputDocument::grouped_gold() const {
  if (!has_gold) {
    throw std::logic_error("grouped_gold: input has no gold column");
  }
  std::vector<std::vector<double>> gold;
  std::map<std::string, std::size_t> index;
  for (const auto& r : score_rows) {
    auto [it, inserted] = index.try_emplace(r.dataset, gold.size());
    if (inserted) gold.emplace_back();
    gold[it->second].push_back(*r.gold);
  }
  return gold;
}

InputFormat detect_format(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == "json") return InputFormat::json;
  }
  return InputFormat::csv;
}

InputDocument parse_input(const std::string& path, InputFormat format) {
  return format == InputFormat::csv ? parse_csv(path) : parse_json_doc(path);
}

}  // namespace repan
