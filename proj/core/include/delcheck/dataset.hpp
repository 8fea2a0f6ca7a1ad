#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "delcheck/record.hpp"

namespace delcheck {

// Maps source field names onto ProblemRecord fields. String label values are
// translated through label_values; native booleans and 0/1 pass through.
struct FieldMap {
  std::string id = "id";
  std::string premise = "premise";
  std::string hypothesis = "hypothesis";
  std::string label = "label";
  std::string gold_formulation = "smcdel_problem";
  std::map<std::string, bool> label_values = {{"entailment", true},
                                              {"neutral", false}};
};

// Reads one structured record per line. Records without an id field get a
// synthetic "line-N" id. Blank lines are skipped.
std::vector<ProblemRecord> load_dataset(const std::string& path,
                                        const FieldMap& fields = {});

// Same, from text already in memory (line numbers start at 1).
std::vector<ProblemRecord> parse_dataset(const std::string& text,
                                         const FieldMap& fields = {});

// Draws n/2 true-labeled and n/2 false-labeled records uniformly without
// replacement. Deterministic for a fixed (records, n, seed); the output lists
// the true-labeled picks first.
std::vector<ProblemRecord> sample_balanced(
    const std::vector<ProblemRecord>& records, std::size_t n,
    std::uint64_t seed);

}  // namespace delcheck
