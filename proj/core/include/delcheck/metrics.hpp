#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "delcheck/outcome.hpp"

namespace delcheck {

// Score used for the rank-statistic AUC: TRUE 1.0, UNKNOWN 0.5, FALSE 0.0.
double score(Verdict v);

// Counts of TRUE/FALSE/UNKNOWN answers split by ground-truth label.
struct DistributionCounts {
  std::array<std::array<std::uint64_t, 3>, 2> counts{};

  static std::size_t label_index(bool label) { return label ? 0 : 1; }
  static std::size_t verdict_index(Verdict v);

  std::uint64_t& at(bool label, Verdict v);
  std::uint64_t at(bool label, Verdict v) const;
  std::uint64_t total() const;

  bool operator==(const DistributionCounts&) const = default;
};

struct RunReport {
  std::string run_label;
  std::string config_digest;
  std::string example_id;
  std::vector<ItemOutcome> outcomes;
  double execution_rate = 0.0;
  double accuracy = 0.0;
  double auc = 0.0;  // NaN when only one label class is present
  DistributionCounts distribution;
};

// Fraction of outcomes with a usable (non-UNKNOWN) answer.
double execution_rate(const std::vector<ItemOutcome>& outcomes);

// Fraction of all outcomes whose answer equals the label; UNKNOWN never
// matches.
double accuracy(const std::vector<ItemOutcome>& outcomes);

// Rank-statistic AUC of score() against the binary label, ties counted half.
double auc(const std::vector<ItemOutcome>& outcomes);

DistributionCounts distribution(const std::vector<ItemOutcome>& outcomes);

// Aggregates the outcomes into a report. The AUC field is NaN when only one
// label class occurs (the auc() operation itself refuses that input).
RunReport build_report(std::string run_label, std::string config_digest,
                       std::string example_id,
                       std::vector<ItemOutcome> outcomes);

// format "machine": full-precision structured file, atomically replaced.
// format "table": the rendered metrics table.
void emit_report(const RunReport& report, const std::string& path,
                 const std::string& format);

RunReport load_report(const std::string& path);

std::string report_to_json(const RunReport& report);

// Rows = runs; columns = Execution Rate(%), Accuracy(%), AUC at 2 decimals.
std::string render_table(const std::vector<RunReport>& reports);

// Six-count distribution as comma-separated rows for external plotting.
std::string render_distribution_csv(const RunReport& report);

// Half-up 2-decimal rendering: format_percent(0.945) is "94.50".
std::string format_percent(double fraction);
std::string format_auc(double value);  // "n/a" for NaN

}  // namespace delcheck
