#include "delcheck/dataset.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "delcheck/errors.hpp"
#include "delcheck/util.hpp"

namespace delcheck {

namespace {

using nlohmann::json;

std::string require_text(const json& obj, const std::string& field,
                         int line) {
  auto it = obj.find(field);
  if (it == obj.end()) throw MissingFieldError(line, field);
  if (!it->is_string()) {
    throw MalformedRecordError(line, "field '" + field + "' is not text");
  }
  return it->get<std::string>();
}

bool parse_label(const json& value, const FieldMap& fields, int line) {
  if (value.is_boolean()) return value.get<bool>();
  if (value.is_number_integer()) {
    auto n = value.get<std::int64_t>();
    if (n == 0 || n == 1) return n == 1;
    throw UnparsableLabelError(line, value.dump());
  }
  if (value.is_string()) {
    auto it = fields.label_values.find(value.get<std::string>());
    if (it != fields.label_values.end()) return it->second;
    throw UnparsableLabelError(line, value.get<std::string>());
  }
  throw UnparsableLabelError(line, value.dump());
}

ProblemRecord parse_record(const std::string& text, const FieldMap& fields,
                           int line) {
  json obj = json::parse(text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    throw MalformedRecordError(line, "not a structured record");
  }

  ProblemRecord record;
  auto id = obj.find(fields.id);
  if (id == obj.end()) {
    record.id = "line-" + std::to_string(line);
  } else if (id->is_string()) {
    record.id = id->get<std::string>();
  } else if (id->is_number_integer()) {
    record.id = std::to_string(id->get<std::int64_t>());
  } else {
    throw MalformedRecordError(line, "field '" + fields.id +
                                         "' is not text or an integer");
  }

  record.premise = require_text(obj, fields.premise, line);
  record.hypothesis = require_text(obj, fields.hypothesis, line);

  auto label = obj.find(fields.label);
  if (label == obj.end()) throw MissingFieldError(line, fields.label);
  record.label = parse_label(*label, fields, line);

  auto gold = obj.find(fields.gold_formulation);
  if (gold != obj.end() && !gold->is_null()) {
    if (!gold->is_string()) {
      throw MalformedRecordError(
          line, "field '" + fields.gold_formulation + "' is not text");
    }
    record.gold_formulation = gold->get<std::string>();
  }
  return record;
}

}  // namespace

std::vector<ProblemRecord> parse_dataset(const std::string& text,
                                         const FieldMap& fields) {
  std::vector<ProblemRecord> records;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    records.push_back(parse_record(line, fields, number));
  }
  return records;
}

std::vector<ProblemRecord> load_dataset(const std::string& path,
                                        const FieldMap& fields) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dataset(buffer.str(), fields);
}

std::vector<ProblemRecord> sample_balanced(
    const std::vector<ProblemRecord>& records, std::size_t n,
    std::uint64_t seed) {
  if (n % 2 != 0) {
    throw ConfigError("sample size must be even, got " + std::to_string(n));
  }
  std::vector<ProblemRecord> trues;
  std::vector<ProblemRecord> falses;
  for (const ProblemRecord& r : records) {
    (r.label ? trues : falses).push_back(r);
  }
  std::size_t half = n / 2;
  if (trues.size() < half) {
    throw InsufficientClassError(true, trues.size(), half);
  }
  if (falses.size() < half) {
    throw InsufficientClassError(false, falses.size(), half);
  }

  // Partial Fisher-Yates with explicit modulo draws: std::shuffle and the
  // distribution classes are implementation-defined, and sampling must be
  // reproducible across standard libraries.
  std::mt19937_64 rng(seed);
  auto pick = [&](std::vector<ProblemRecord>& pool) {
    for (std::size_t i = 0; i < half; ++i) {
      std::size_t j = i + rng() % (pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(half);
  };
  pick(trues);
  pick(falses);

  std::vector<ProblemRecord> out;
  out.reserve(n);
  out.insert(out.end(), trues.begin(), trues.end());
  out.insert(out.end(), falses.begin(), falses.end());
  return out;
}

}  // namespace delcheck
