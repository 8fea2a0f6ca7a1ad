#pragma once

#include <string>
#include <vector>

#include "delcheck/record.hpp"

namespace delcheck {

enum class Setting { Direct, Sfg };

std::string to_string(Setting s);
Setting setting_from_string(const std::string& name);

struct Message {
  std::string role;
  std::string content;

  bool operator==(const Message&) const = default;
};

// An ordered list of chat messages whose bodies may contain the placeholders
// {example_premise}, {example_hypothesis}, {example_answer},
// {example_formulation}, {problem_premise} and {problem_hypothesis}.
struct PromptTemplate {
  std::string name;
  std::vector<Message> messages;

  bool operator==(const PromptTemplate&) const = default;
};

// Loads a template from a JSON file {"name": ..., "messages": [{"role",
// "content"}, ...]} and rejects placeholders outside the six above.
PromptTemplate load_template(const std::string& path);
PromptTemplate parse_template(const std::string& json_text);

// Substitutes every placeholder occurrence. The example's answer is bound
// only in the direct setting, its formulation only in sfg.
std::vector<Message> render_prompt(const PromptTemplate& tmpl, Setting setting,
                                   const ProblemRecord& example,
                                   const ProblemRecord& problem);

}  // namespace delcheck
