#include "delcheck/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "delcheck/errors.hpp"

namespace delcheck {

namespace {

using nlohmann::json;

Verdict verdict_from_string(const std::string& name) {
  if (name == "TRUE") return Verdict::True;
  if (name == "FALSE") return Verdict::False;
  if (name == "UNKNOWN") return Verdict::Unknown;
  throw Error("unknown verdict '" + name + "'");
}

}  // namespace

double score(Verdict v) {
  switch (v) {
    case Verdict::True:
      return 1.0;
    case Verdict::Unknown:
      return 0.5;
    case Verdict::False:
      return 0.0;
  }
  throw std::logic_error("unhandled verdict");
}

std::size_t DistributionCounts::verdict_index(Verdict v) {
  switch (v) {
    case Verdict::True:
      return 0;
    case Verdict::False:
      return 1;
    case Verdict::Unknown:
      return 2;
  }
  throw std::logic_error("unhandled verdict");
}

std::uint64_t& DistributionCounts::at(bool label, Verdict v) {
  return counts[label_index(label)][verdict_index(v)];
}

std::uint64_t DistributionCounts::at(bool label, Verdict v) const {
  return counts[label_index(label)][verdict_index(v)];
}

std::uint64_t DistributionCounts::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : counts) {
    for (std::uint64_t c : row) sum += c;
  }
  return sum;
}

double execution_rate(const std::vector<ItemOutcome>& outcomes) {
  if (outcomes.empty()) throw EmptyRunError();
  std::size_t executed = 0;
  for (const ItemOutcome& o : outcomes) {
    if (o.classification != Verdict::Unknown) ++executed;
  }
  return static_cast<double>(executed) / static_cast<double>(outcomes.size());
}

double accuracy(const std::vector<ItemOutcome>& outcomes) {
  if (outcomes.empty()) throw EmptyRunError();
  std::size_t correct = 0;
  for (const ItemOutcome& o : outcomes) {
    if (o.classification == (o.label ? Verdict::True : Verdict::False)) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(outcomes.size());
}

double auc(const std::vector<ItemOutcome>& outcomes) {
  if (outcomes.empty()) throw EmptyRunError();
  std::vector<std::pair<double, bool>> scored;
  scored.reserve(outcomes.size());
  std::size_t positives = 0;
  for (const ItemOutcome& o : outcomes) {
    scored.emplace_back(score(o.classification), o.label);
    if (o.label) ++positives;
  }
  std::size_t negatives = scored.size() - positives;
  if (positives == 0 || negatives == 0) throw SingleClassError();

  // Mann-Whitney U via midranks: AUC = (R+ - P(P+1)/2) / (P*N).
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < scored.size()) {
    std::size_t j = i;
    while (j < scored.size() && scored[j].first == scored[i].first) ++j;
    double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (scored[k].second) positive_rank_sum += midrank;
    }
    i = j;
  }
  double p = static_cast<double>(positives);
  double n = static_cast<double>(negatives);
  double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * n);
}

DistributionCounts distribution(const std::vector<ItemOutcome>& outcomes) {
  DistributionCounts counts;
  for (const ItemOutcome& o : outcomes) {
    ++counts.at(o.label, o.classification);
  }
  return counts;
}

RunReport build_report(std::string run_label, std::string config_digest,
                       std::string example_id,
                       std::vector<ItemOutcome> outcomes) {
  if (outcomes.empty()) throw EmptyRunError();
  RunReport report;
  report.run_label = std::move(run_label);
  report.config_digest = std::move(config_digest);
  report.example_id = std::move(example_id);
  report.execution_rate = execution_rate(outcomes);
  report.accuracy = accuracy(outcomes);
  report.distribution = distribution(outcomes);
  bool has_true = false;
  bool has_false = false;
  for (const ItemOutcome& o : outcomes) {
    (o.label ? has_true : has_false) = true;
  }
  report.auc = has_true && has_false
                   ? auc(outcomes)
                   : std::numeric_limits<double>::quiet_NaN();
  report.outcomes = std::move(outcomes);
  return report;
}

std::string report_to_json(const RunReport& report) {
  json doc;
  doc["version"] = 1;
  doc["run_label"] = report.run_label;
  doc["config_digest"] = report.config_digest;
  doc["example_id"] = report.example_id;
  doc["score_mapping"] = {{"TRUE", 1.0}, {"UNKNOWN", 0.5}, {"FALSE", 0.0}};
  doc["metrics"] = {
      {"n", report.outcomes.size()},
      {"execution_rate", report.execution_rate},
      {"accuracy", report.accuracy},
  };
  if (std::isnan(report.auc)) {
    doc["metrics"]["auc"] = nullptr;
  } else {
    doc["metrics"]["auc"] = report.auc;
  }
  auto label_row = [&](bool label) {
    return json{{"TRUE", report.distribution.at(label, Verdict::True)},
                {"FALSE", report.distribution.at(label, Verdict::False)},
                {"UNKNOWN", report.distribution.at(label, Verdict::Unknown)}};
  };
  doc["distribution"] = {{"label_true", label_row(true)},
                         {"label_false", label_row(false)}};
  doc["outcomes"] = json::array();
  for (const ItemOutcome& o : report.outcomes) {
    json item;
    item["id"] = o.record_id;
    item["label"] = o.label;
    item["classification"] = to_string(o.classification);
    item["raw_response"] = o.raw_response;
    item["formulation"] = o.formulation ? json(*o.formulation) : json(nullptr);
    item["checker_verdict"] =
        o.checker_verdict ? json(*o.checker_verdict) : json(nullptr);
    item["failure_reason"] =
        o.failure_reason ? json(*o.failure_reason) : json(nullptr);
    item["latency_us"] = o.latency.count();
    doc["outcomes"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

void emit_report(const RunReport& report, const std::string& path,
                 const std::string& format) {
  std::string payload;
  if (format == "machine") {
    payload = report_to_json(report);
  } else if (format == "table") {
    payload = render_table({report});
  } else {
    throw ConfigError("unknown report format '" + format +
                      "' (expected machine or table)");
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw WriteFailureError(path);
    out << payload;
    if (!out.flush()) throw WriteFailureError(path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw WriteFailureError(path);
  }
}

RunReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open report '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json doc = json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error("report '" + path + "' is not a structured file");
  }

  RunReport report;
  report.run_label = doc.value("run_label", std::string{});
  report.config_digest = doc.value("config_digest", std::string{});
  report.example_id = doc.value("example_id", std::string{});
  std::vector<ItemOutcome> outcomes;
  for (const json& item : doc.value("outcomes", json::array())) {
    ItemOutcome o;
    o.record_id = item.value("id", std::string{});
    o.label = item.value("label", false);
    o.classification =
        verdict_from_string(item.value("classification", std::string{}));
    o.raw_response = item.value("raw_response", std::string{});
    if (item.contains("formulation") && item["formulation"].is_string()) {
      o.formulation = item["formulation"].get<std::string>();
    }
    if (item.contains("checker_verdict") &&
        item["checker_verdict"].is_boolean()) {
      o.checker_verdict = item["checker_verdict"].get<bool>();
    }
    if (item.contains("failure_reason") &&
        item["failure_reason"].is_string()) {
      o.failure_reason = item["failure_reason"].get<std::string>();
    }
    o.latency = std::chrono::microseconds(
        item.value("latency_us", std::int64_t{0}));
    outcomes.push_back(std::move(o));
  }
  RunReport rebuilt = build_report(report.run_label, report.config_digest,
                                   report.example_id, std::move(outcomes));
  return rebuilt;
}

std::string format_percent(double fraction) {
  long long scaled = std::llround(fraction * 10000.0);
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f",
                static_cast<double>(scaled) / 100.0);
  return buffer;
}

std::string format_auc(double value) {
  if (std::isnan(value)) return "n/a";
  long long scaled = std::llround(value * 100.0);
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f",
                static_cast<double>(scaled) / 100.0);
  return buffer;
}

std::string render_table(const std::vector<RunReport>& reports) {
  std::size_t label_width = 3;  // "Run"
  for (const RunReport& r : reports) {
    label_width = std::max(label_width, r.run_label.size());
  }
  std::ostringstream os;
  os << std::left;
  auto row = [&](const std::string& label, const std::string& exec,
                 const std::string& acc, const std::string& auc_text) {
    os.width(static_cast<std::streamsize>(label_width + 2));
    os << label;
    os.width(19);
    os << exec;
    os.width(13);
    os << acc;
    os << auc_text << "\n";
  };
  row("Run", "Execution Rate(%)", "Accuracy(%)", "AUC");
  for (const RunReport& r : reports) {
    row(r.run_label, format_percent(r.execution_rate),
        format_percent(r.accuracy), format_auc(r.auc));
  }
  return os.str();
}

std::string render_distribution_csv(const RunReport& report) {
  std::ostringstream os;
  os << "label,TRUE,FALSE,UNKNOWN\n";
  auto row = [&](bool label) {
    os << (label ? "true" : "false") << ','
       << report.distribution.at(label, Verdict::True) << ','
       << report.distribution.at(label, Verdict::False) << ','
       << report.distribution.at(label, Verdict::Unknown) << "\n";
  };
  row(true);
  row(false);
  return os.str();
}

}  // namespace delcheck
