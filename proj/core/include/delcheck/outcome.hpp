#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "delcheck/record.hpp"

namespace delcheck {

// The result of putting one record through the prompt/query/classify loop.
// classification is Unknown exactly when failure_reason is set.
struct ItemOutcome {
  std::string record_id;
  bool label = false;
  std::string raw_response;
  Verdict classification = Verdict::Unknown;
  std::optional<std::string> formulation;
  std::optional<bool> checker_verdict;
  std::optional<std::string> failure_reason;
  std::chrono::microseconds latency{0};

  bool operator==(const ItemOutcome&) const = default;
};

}  // namespace delcheck
