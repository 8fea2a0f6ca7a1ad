#pragma once

#include <optional>
#include <string>

namespace delcheck {

enum class Verdict { True, False, Unknown };

std::string to_string(Verdict v);

// One benchmark item as loaded from a dataset file.
struct ProblemRecord {
  std::string id;
  std::string premise;
  std::string hypothesis;
  bool label = false;
  std::optional<std::string> gold_formulation;

  bool operator==(const ProblemRecord&) const = default;
};

}  // namespace delcheck
