#include "eval_config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "delcheck/errors.hpp"
#include "delcheck/prompt.hpp"
#include "delcheck/util.hpp"

namespace delcheck {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(std::string("cannot open ") + what + " '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json doc = json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ConfigError(std::string(what) + " '" + path +
                      "' is not a structured object");
  }
  return doc;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const char* where) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) {
      throw ConfigError(std::string("unknown ") + where + " key '" + key +
                        "'");
    }
  }
}

std::string resolve(const std::filesystem::path& base,
                    const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (base / p).string();
}

FieldMap parse_field_map(const json& obj) {
  reject_unknown_keys(obj,
                      {"id", "premise", "hypothesis", "label",
                       "gold_formulation", "label_values"},
                      "field map");
  FieldMap fields;
  fields.id = obj.value("id", fields.id);
  fields.premise = obj.value("premise", fields.premise);
  fields.hypothesis = obj.value("hypothesis", fields.hypothesis);
  fields.label = obj.value("label", fields.label);
  fields.gold_formulation =
      obj.value("gold_formulation", fields.gold_formulation);
  if (obj.contains("label_values")) {
    const json& values = obj["label_values"];
    if (!values.is_object()) {
      throw ConfigError("field map 'label_values' must map text to booleans");
    }
    fields.label_values.clear();
    for (const auto& [key, value] : values.items()) {
      if (!value.is_boolean()) {
        throw ConfigError("field map 'label_values' must map text to booleans");
      }
      fields.label_values.emplace(key, value.get<bool>());
    }
  }
  return fields;
}

BackendConfig parse_backend(const json& obj) {
  reject_unknown_keys(obj,
                      {"mode", "endpoint", "model", "temperature",
                       "api_key_env", "retry_limit", "backoff_ms", "fixture"},
                      "backend");
  BackendConfig backend;
  backend.mode = obj.value("mode", backend.mode);
  backend.endpoint = obj.value("endpoint", backend.endpoint);
  backend.model = obj.value("model", backend.model);
  backend.temperature = obj.value("temperature", backend.temperature);
  backend.api_key_env = obj.value("api_key_env", backend.api_key_env);
  backend.retry_limit = obj.value("retry_limit", backend.retry_limit);
  backend.backoff_ms = obj.value("backoff_ms", backend.backoff_ms);
  backend.fixture_path = obj.value("fixture", backend.fixture_path);
  return backend;
}

}  // namespace

FieldMap load_field_map(const std::string& path) {
  return parse_field_map(read_json_file(path, "field map"));
}

ProblemRecord load_example(const std::string& path, const FieldMap& fields) {
  std::vector<ProblemRecord> records = load_dataset(path, fields);
  if (records.size() != 1) {
    throw ConfigError("example file '" + path +
                      "' must hold exactly one record, found " +
                      std::to_string(records.size()));
  }
  return records.front();
}

EvalSpec load_eval_spec(const std::string& config_path,
                        const EvalOverrides& overrides) {
  json doc = read_json_file(config_path, "config");
  reject_unknown_keys(doc,
                      {"run_label", "setting", "template", "dataset",
                       "field_map", "example", "sample_size", "seed",
                       "parallelism", "out", "backend"},
                      "config");

  auto require_string = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_string()) {
      throw ConfigError(std::string("config needs a text '") + key + "'");
    }
    return doc[key].get<std::string>();
  };
  if (!doc.contains("backend") || !doc["backend"].is_object()) {
    throw ConfigError("config needs a 'backend' object");
  }
  if (!doc.contains("sample_size") ||
      !doc["sample_size"].is_number_unsigned()) {
    throw ConfigError("config needs an unsigned 'sample_size'");
  }
  if (!doc.contains("seed") && !overrides.seed) {
    throw ConfigError("config needs a 'seed' (or pass --seed)");
  }
  if (!doc.contains("out") && !overrides.out) {
    throw ConfigError("config needs an 'out' path (or pass --out)");
  }

  if (overrides.seed) doc["seed"] = *overrides.seed;
  if (overrides.out) doc["out"] = *overrides.out;
  if (!doc["seed"].is_number_unsigned()) {
    throw ConfigError("config 'seed' must be a nonnegative integer");
  }
  if (doc.contains("parallelism") && !doc["parallelism"].is_number_integer()) {
    throw ConfigError("config 'parallelism' must be an integer");
  }
  if (doc.contains("run_label") && !doc["run_label"].is_string()) {
    throw ConfigError("config 'run_label' must be text");
  }

  EvalSpec spec;
  spec.run.config_digest = to_hex(fnv1a64(doc.dump()));
  spec.run.run_label = doc.value("run_label", std::string("run"));
  spec.run.setting = setting_from_string(require_string("setting"));
  spec.run.parallelism = doc.value("parallelism", 1);
  spec.run.seed = doc["seed"].get<std::uint64_t>();
  spec.sample_size = doc["sample_size"].get<std::size_t>();

  std::filesystem::path base =
      std::filesystem::path(config_path).parent_path();
  spec.out_path = resolve(base, require_string("out"));
  spec.dataset_path = resolve(base, require_string("dataset"));
  if (doc.contains("field_map")) {
    if (!doc["field_map"].is_object()) {
      throw ConfigError("config 'field_map' must be an object");
    }
    spec.fields = parse_field_map(doc["field_map"]);
  }
  spec.run.prompt = load_template(resolve(base, require_string("template")));
  spec.run.example =
      load_example(resolve(base, require_string("example")), spec.fields);
  spec.run.backend = parse_backend(doc["backend"]);
  spec.run.backend.fixture_path =
      resolve(base, spec.run.backend.fixture_path);
  return spec;
}

}  // namespace delcheck
