#include "delcheck/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <numeric>
#include <thread>
#include <utility>

#include "json.hpp"

#include "delcheck/checker.hpp"
#include "delcheck/errors.hpp"
#include "delcheck/util.hpp"

namespace delcheck {

namespace {

using nlohmann::json;

std::string strip_answer(const std::string& text) {
  std::string s = trim(text);
  bool changed = true;
  while (changed) {
    changed = false;
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') &&
        s.back() == s.front()) {
      s = trim(s.substr(1, s.size() - 2));
      changed = true;
    }
    while (!s.empty() && s.back() == '.') {
      s.pop_back();
      changed = true;
    }
    if (changed) s = trim(s);
  }
  return s;
}

bool iequals(const std::string& a, const char* b) {
  std::size_t n = 0;
  for (; b[n] != '\0'; ++n) {
    if (n >= a.size() ||
        std::toupper(static_cast<unsigned char>(a[n])) != b[n]) {
      return false;
    }
  }
  return n == a.size();
}

std::string gold_answer(const ProblemRecord& record, Setting setting) {
  if (setting == Setting::Direct) return record.label ? "TRUE" : "FALSE";
  if (!record.gold_formulation) throw MissingGoldFormulationError(record.id);
  return *record.gold_formulation;
}

}  // namespace

const RunConfig& validate_config(const RunConfig& config) {
  if (config.parallelism < 1) {
    throw ConfigError("parallelism must be >= 1");
  }
  validate_backend_config(config.backend);
  if (config.setting == Setting::Sfg && !config.example.gold_formulation) {
    throw MissingGoldFormulationError(config.example.id);
  }
  // Rendering the example against itself surfaces template problems before
  // any backend work starts.
  render_prompt(config.prompt, config.setting, config.example,
                config.example);
  return config;
}

Verdict classify_direct(const std::string& text) {
  std::string answer = strip_answer(text);
  if (iequals(answer, "TRUE")) return Verdict::True;
  if (iequals(answer, "FALSE")) return Verdict::False;
  return Verdict::Unknown;
}

std::optional<std::string> extract_formulation(const std::string& text) {
  std::string candidate;
  std::size_t fence = text.find("```");
  if (fence != std::string::npos) {
    std::size_t body = text.find('\n', fence + 3);
    std::size_t close = body == std::string::npos
                            ? std::string::npos
                            : text.find("```", body + 1);
    if (close != std::string::npos) {
      candidate = text.substr(body + 1, close - body - 1);
    } else {
      // Unterminated fence: fall back to everything after the fence line.
      candidate = body == std::string::npos ? "" : text.substr(body + 1);
    }
  } else {
    candidate = text;
  }
  candidate = trim(candidate);
  if (candidate.empty()) return std::nullopt;
  return candidate;
}

ItemOutcome run_item(const RunConfig& config, Backend& backend,
                     const ProblemRecord& record) {
  auto start = std::chrono::steady_clock::now();
  ItemOutcome outcome;
  outcome.record_id = record.id;
  outcome.label = record.label;

  auto finish = [&] {
    outcome.latency = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return outcome;
  };

  std::vector<Message> messages =
      render_prompt(config.prompt, config.setting, config.example, record);
  try {
    outcome.raw_response = backend.complete(messages, record.id);
  } catch (const BackendUnavailableError&) {
    outcome.classification = Verdict::Unknown;
    outcome.failure_reason = "backend";
    return finish();
  } catch (const FixtureMissError& e) {
    outcome.classification = Verdict::Unknown;
    outcome.failure_reason = e.what();
    return finish();
  }

  if (config.setting == Setting::Direct) {
    outcome.classification = classify_direct(outcome.raw_response);
    if (outcome.classification == Verdict::Unknown) {
      outcome.failure_reason = "non-literal answer";
    }
    return finish();
  }

  std::optional<std::string> candidate =
      extract_formulation(outcome.raw_response);
  if (!candidate) {
    outcome.classification = Verdict::Unknown;
    outcome.failure_reason = "empty response";
    return finish();
  }
  outcome.formulation = candidate;
  try {
    QueryResult result = run_query(*candidate);
    outcome.checker_verdict = result.verdict;
    outcome.classification = result.verdict ? Verdict::True : Verdict::False;
  } catch (const Error& e) {
    outcome.classification = Verdict::Unknown;
    outcome.failure_reason = e.what();
  }
  return finish();
}

ItemOutcome run_item(const RunConfig& config, const ProblemRecord& record) {
  auto backend = make_backend(config.backend);
  return run_item(config, *backend, record);
}

RunReport run_eval(const RunConfig& config,
                   const std::vector<ProblemRecord>& records) {
  if (records.empty()) throw EmptyRunError();
  validate_config(config);
  auto backend = make_backend(config.backend);

  std::vector<ItemOutcome> outcomes(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < records.size();
         i = next.fetch_add(1)) {
      try {
        outcomes[i] = run_item(config, *backend, records[i]);
      } catch (const Error& e) {
        outcomes[i].record_id = records[i].id;
        outcomes[i].label = records[i].label;
        outcomes[i].classification = Verdict::Unknown;
        outcomes[i].failure_reason = e.what();
      }
    }
  };

  std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(config.parallelism), records.size());
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<std::size_t> order(outcomes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return outcomes[a].record_id < outcomes[b].record_id;
                   });
  std::vector<ItemOutcome> sorted;
  sorted.reserve(outcomes.size());
  for (std::size_t i : order) sorted.push_back(std::move(outcomes[i]));

  return build_report(config.run_label, config.config_digest,
                      config.example.id, std::move(sorted));
}

std::size_t export_finetune(const std::vector<ProblemRecord>& records,
                            Setting setting, const PromptTemplate& tmpl,
                            const ProblemRecord& example,
                            const std::string& path) {
  // Validate everything before touching the file so a bad record cannot
  // leave a partial export behind.
  for (const ProblemRecord& r : records) gold_answer(r, setting);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw WriteFailureError(path);
  for (const ProblemRecord& r : records) {
    std::vector<Message> messages =
        render_prompt(tmpl, setting, example, r);
    json line;
    line["messages"] = json::array();
    for (const Message& m : messages) {
      line["messages"].push_back({{"role", m.role}, {"content", m.content}});
    }
    line["messages"].push_back(
        {{"role", "assistant"}, {"content", gold_answer(r, setting)}});
    out << line.dump() << "\n";
  }
  if (!out.flush()) throw WriteFailureError(path);
  return records.size();
}

}  // namespace delcheck
