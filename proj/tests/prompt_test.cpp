#include <string>

#include "doctest.h"

#include "delcheck/errors.hpp"
#include "delcheck/prompt.hpp"
#include "delcheck/record.hpp"
#include "test_support.hpp"

using namespace delcheck;

namespace {

ProblemRecord example_record() {
  ProblemRecord r;
  r.id = "ex";
  r.premise = "Example premise.";
  r.hypothesis = "Example hypothesis.";
  r.label = true;
  r.gold_formulation = "VARS 1\nLAW Top\nOBS a:1\nVALID? 1";
  return r;
}

ProblemRecord problem_record() {
  ProblemRecord r;
  r.id = "pr";
  r.premise = "Problem premise.";
  r.hypothesis = "Problem hypothesis.";
  r.label = false;
  return r;
}

}  // namespace

TEST_CASE("templates parse from structured text") {
  PromptTemplate tmpl = parse_template(
      "{\"name\": \"t\", \"messages\": ["
      "{\"role\": \"system\", \"content\": \"Be brief.\"},"
      "{\"role\": \"user\", \"content\": \"{problem_premise}\"}]}");
  CHECK(tmpl.name == "t");
  REQUIRE(tmpl.messages.size() == 2);
  CHECK(tmpl.messages[0].role == "system");
  CHECK(tmpl.messages[1].content == "{problem_premise}");
}

TEST_CASE("template rejections") {
  CHECK_THROWS_AS(parse_template("not json"), ConfigError);
  CHECK_THROWS_AS(parse_template("{\"name\": \"t\"}"), ConfigError);
  CHECK_THROWS_AS(parse_template("{\"name\": \"t\", \"messages\": 3}"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_template("{\"name\": \"t\", \"messages\": [{\"role\": \"u\"}]}"),
      ConfigError);
  try {
    parse_template(
        "{\"name\": \"t\", \"messages\": ["
        "{\"role\": \"user\", \"content\": \"{example_premize}\"}]}");
    FAIL("expected UnknownPlaceholderError");
  } catch (const UnknownPlaceholderError& e) {
    CHECK(std::string(e.what()).find("example_premize") != std::string::npos);
  }
}

TEST_CASE("all six placeholder names are accepted") {
  std::string body =
      "{example_premise} {example_hypothesis} {example_answer} "
      "{example_formulation} {problem_premise} {problem_hypothesis}";
  CHECK_NOTHROW(parse_template(
      "{\"name\": \"t\", \"messages\": [{\"role\": \"user\", \"content\": \"" +
      body + "\"}]}"));
}

TEST_CASE("braces that are not placeholders pass through untouched") {
  PromptTemplate tmpl = parse_template(
      "{\"name\": \"t\", \"messages\": [{\"role\": \"user\", "
      "\"content\": \"keep { this } and {1+1} and {} as is; "
      "answer {problem_hypothesis}\"}]}");
  std::vector<Message> rendered = render_prompt(
      tmpl, Setting::Direct, example_record(), problem_record());
  CHECK(rendered[0].content ==
        "keep { this } and {1+1} and {} as is; answer Problem hypothesis.");
}

TEST_CASE("direct rendering substitutes example answer from the label") {
  PromptTemplate tmpl = parse_template(
      "{\"name\": \"direct\", \"messages\": ["
      "{\"role\": \"user\", \"content\": "
      "\"P: {example_premise} H: {example_hypothesis}\"},"
      "{\"role\": \"assistant\", \"content\": \"{example_answer}\"},"
      "{\"role\": \"user\", \"content\": "
      "\"P: {problem_premise} H: {problem_hypothesis}\"}]}");

  std::vector<Message> rendered = render_prompt(
      tmpl, Setting::Direct, example_record(), problem_record());
  REQUIRE(rendered.size() == 3);
  CHECK(rendered[0].content == "P: Example premise. H: Example hypothesis.");
  CHECK(rendered[1].content == "TRUE");
  CHECK(rendered[2].content == "P: Problem premise. H: Problem hypothesis.");

  ProblemRecord negative = example_record();
  negative.label = false;
  CHECK(render_prompt(tmpl, Setting::Direct, negative,
                      problem_record())[1]
            .content == "FALSE");
}

TEST_CASE("formulation rendering substitutes the gold formulation") {
  PromptTemplate tmpl = parse_template(
      "{\"name\": \"sfg\", \"messages\": ["
      "{\"role\": \"assistant\", \"content\": \"{example_formulation}\"}]}");
  std::vector<Message> rendered = render_prompt(
      tmpl, Setting::Sfg, example_record(), problem_record());
  CHECK(rendered[0].content == *example_record().gold_formulation);

  ProblemRecord no_gold = example_record();
  no_gold.gold_formulation.reset();
  try {
    render_prompt(tmpl, Setting::Sfg, no_gold, problem_record());
    FAIL("expected MissingGoldFormulationError");
  } catch (const MissingGoldFormulationError& e) {
    CHECK(std::string(e.what()).find("ex") != std::string::npos);
  }
}

TEST_CASE("placeholders outside the setting's vocabulary are unbound") {
  PromptTemplate answer_tmpl = parse_template(
      "{\"name\": \"t\", \"messages\": ["
      "{\"role\": \"assistant\", \"content\": \"{example_answer}\"}]}");
  CHECK_THROWS_AS(render_prompt(answer_tmpl, Setting::Sfg, example_record(),
                                problem_record()),
                  UnboundPlaceholderError);

  PromptTemplate gold_tmpl = parse_template(
      "{\"name\": \"t\", \"messages\": ["
      "{\"role\": \"assistant\", \"content\": \"{example_formulation}\"}]}");
  CHECK_THROWS_AS(render_prompt(gold_tmpl, Setting::Direct, example_record(),
                                problem_record()),
                  UnboundPlaceholderError);
}

TEST_CASE("repeated placeholders are all substituted") {
  PromptTemplate tmpl = parse_template(
      "{\"name\": \"t\", \"messages\": [{\"role\": \"user\", "
      "\"content\": \"{problem_premise} and again {problem_premise}\"}]}");
  std::vector<Message> rendered = render_prompt(
      tmpl, Setting::Direct, example_record(), problem_record());
  CHECK(rendered[0].content == "Problem premise. and again Problem premise.");
}

TEST_CASE("setting names") {
  CHECK(setting_from_string("direct") == Setting::Direct);
  CHECK(setting_from_string("sfg") == Setting::Sfg);
  CHECK_THROWS_AS(setting_from_string("DIRECT"), ConfigError);
  CHECK_THROWS_AS(setting_from_string(""), ConfigError);
  CHECK(to_string(Setting::Direct) == std::string("direct"));
  CHECK(to_string(Setting::Sfg) == std::string("sfg"));
}

TEST_CASE("load_template reads from disk") {
  testsupport::TempDir dir;
  std::string path = dir.file("t.json");
  testsupport::write_file(path,
                          "{\"name\": \"file-template\", \"messages\": ["
                          "{\"role\": \"user\", \"content\": \"hi\"}]}");
  CHECK(load_template(path).name == "file-template");
  CHECK_THROWS_AS(load_template(dir.file("missing.json")), ConfigError);
}
