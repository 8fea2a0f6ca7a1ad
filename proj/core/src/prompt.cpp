#include "delcheck/prompt.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

#include "delcheck/errors.hpp"

namespace delcheck {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 6> kPlaceholders = {
    "example_premise",     "example_hypothesis", "example_answer",
    "example_formulation", "problem_premise",    "problem_hypothesis"};

bool known_placeholder(const std::string& name) {
  for (const char* p : kPlaceholders) {
    if (name == p) return true;
  }
  return false;
}

// Calls visit(name) for every brace token shaped like an identifier; other
// brace uses are left as literal text.
void scan_placeholders(const std::string& body,
                       const std::function<void(const std::string&, std::size_t,
                                                std::size_t)>& visit) {
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] != '{') {
      ++i;
      continue;
    }
    std::size_t close = body.find('}', i + 1);
    if (close == std::string::npos) break;
    std::string name = body.substr(i + 1, close - i - 1);
    bool identifier = !name.empty() &&
                      (std::isalpha(static_cast<unsigned char>(name[0])) ||
                       name[0] == '_');
    for (char c : name) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        identifier = false;
      }
    }
    if (identifier) {
      visit(name, i, close + 1 - i);
      i = close + 1;
    } else {
      ++i;
    }
  }
}

void check_placeholders(const PromptTemplate& tmpl) {
  for (const Message& msg : tmpl.messages) {
    scan_placeholders(msg.content,
                      [](const std::string& name, std::size_t, std::size_t) {
                        if (!known_placeholder(name)) {
                          throw UnknownPlaceholderError(name);
                        }
                      });
  }
}

}  // namespace

std::string to_string(Setting s) {
  return s == Setting::Direct ? "direct" : "sfg";
}

Setting setting_from_string(const std::string& name) {
  if (name == "direct") return Setting::Direct;
  if (name == "sfg") return Setting::Sfg;
  throw ConfigError("unknown setting '" + name + "' (expected direct or sfg)");
}

PromptTemplate parse_template(const std::string& json_text) {
  json obj = json::parse(json_text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    throw ConfigError("template is not a structured object");
  }
  PromptTemplate tmpl;
  if (!obj.contains("name") || !obj["name"].is_string()) {
    throw ConfigError("template needs a text 'name' field");
  }
  tmpl.name = obj["name"].get<std::string>();
  if (!obj.contains("messages") || !obj["messages"].is_array() ||
      obj["messages"].empty()) {
    throw ConfigError("template needs a nonempty 'messages' array");
  }
  for (const json& m : obj["messages"]) {
    if (!m.is_object() || !m.contains("role") || !m["role"].is_string() ||
        !m.contains("content") || !m["content"].is_string()) {
      throw ConfigError("template messages need text 'role' and 'content'");
    }
    tmpl.messages.push_back(
        Message{m["role"].get<std::string>(), m["content"].get<std::string>()});
  }
  check_placeholders(tmpl);
  return tmpl;
}

PromptTemplate load_template(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open template '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_template(buffer.str());
}

std::vector<Message> render_prompt(const PromptTemplate& tmpl, Setting setting,
                                   const ProblemRecord& example,
                                   const ProblemRecord& problem) {
  std::map<std::string, std::string> bindings = {
      {"example_premise", example.premise},
      {"example_hypothesis", example.hypothesis},
      {"problem_premise", problem.premise},
      {"problem_hypothesis", problem.hypothesis},
  };
  if (setting == Setting::Direct) {
    bindings.emplace("example_answer", example.label ? "TRUE" : "FALSE");
  } else {
    if (!example.gold_formulation) {
      throw MissingGoldFormulationError(example.id);
    }
    bindings.emplace("example_formulation", *example.gold_formulation);
  }

  std::vector<Message> out;
  out.reserve(tmpl.messages.size());
  for (const Message& msg : tmpl.messages) {
    std::string rendered;
    std::size_t copied = 0;
    scan_placeholders(
        msg.content, [&](const std::string& name, std::size_t at,
                         std::size_t length) {
          if (!known_placeholder(name)) throw UnknownPlaceholderError(name);
          auto bound = bindings.find(name);
          if (bound == bindings.end()) throw UnboundPlaceholderError(name);
          rendered.append(msg.content, copied, at - copied);
          rendered.append(bound->second);
          copied = at + length;
        });
    rendered.append(msg.content, copied, std::string::npos);
    out.push_back(Message{msg.role, std::move(rendered)});
  }
  return out;
}

}  // namespace delcheck
