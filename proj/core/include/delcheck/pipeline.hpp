#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delcheck/backend.hpp"
#include "delcheck/metrics.hpp"
#include "delcheck/outcome.hpp"
#include "delcheck/prompt.hpp"
#include "delcheck/record.hpp"

namespace delcheck {

struct RunConfig {
  std::string run_label = "run";
  std::string config_digest;
  Setting setting = Setting::Direct;
  PromptTemplate prompt;
  ProblemRecord example;  // the fixed one-shot example
  BackendConfig backend;
  int parallelism = 1;
  std::uint64_t seed = 0;
};

// Checks setting/example/backend/template consistency (including a dry-run
// render); throws ConfigError or a matching domain error.
const RunConfig& validate_config(const RunConfig& config);

// "TRUE"/"FALSE" after trimming whitespace and surrounding quotes/periods,
// case-insensitively; everything else is UNKNOWN.
Verdict classify_direct(const std::string& text);

// Candidate formulation: the first fenced code block if any, else the whole
// trimmed response; nullopt when that leaves nothing. Never executes.
std::optional<std::string> extract_formulation(const std::string& text);

// Prompt, query, classify one record; in the sfg setting the extracted
// formulation is executed by the checker and the verdict becomes the answer.
// Backend failures are recorded as UNKNOWN outcomes, never thrown.
ItemOutcome run_item(const RunConfig& config, Backend& backend,
                     const ProblemRecord& record);

// Convenience form that builds (and discards) its own backend.
ItemOutcome run_item(const RunConfig& config, const ProblemRecord& record);

// Runs every record (in parallel up to config.parallelism), sorts outcomes
// by record id, and aggregates them into a report.
RunReport run_eval(const RunConfig& config,
                   const std::vector<ProblemRecord>& records);

// Writes one chat-format training line per record: the rendered prompt plus
// an assistant message carrying the gold answer (direct) or the gold
// formulation (sfg). Returns the number of lines written.
std::size_t export_finetune(const std::vector<ProblemRecord>& records,
                            Setting setting, const PromptTemplate& tmpl,
                            const ProblemRecord& example,
                            const std::string& path);

}  // namespace delcheck
