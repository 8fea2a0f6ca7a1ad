#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "delcheck/dataset.hpp"
#include "delcheck/pipeline.hpp"

namespace delcheck {

// A fully resolved eval invocation: the run configuration plus the dataset
// and output locations named by the config file.
struct EvalSpec {
  RunConfig run;
  std::string dataset_path;
  FieldMap fields;
  std::size_t sample_size = 0;
  std::string out_path;
};

struct EvalOverrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
};

// Reads a structured config file, applies CLI overrides, resolves paths
// relative to the config file and loads the template and example. The
// config digest embedded in the run covers the overridden values.
EvalSpec load_eval_spec(const std::string& config_path,
                        const EvalOverrides& overrides);

// Shared helper for flags that point at a field-map file.
FieldMap load_field_map(const std::string& path);

// Loads the one-shot example: a dataset file containing exactly one record.
ProblemRecord load_example(const std::string& path, const FieldMap& fields);

}  // namespace delcheck
