#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "doctest.h"

#include "json.hpp"

#include "delcheck/dataset.hpp"
#include "delcheck/errors.hpp"
#include "delcheck/metrics.hpp"
#include "delcheck/pipeline.hpp"
#include "test_support.hpp"

using namespace delcheck;
using nlohmann::json;

namespace {

PromptTemplate direct_template() {
  return parse_template(
      "{\"name\": \"direct\", \"messages\": ["
      "{\"role\": \"user\", \"content\": "
      "\"P: {example_premise} H: {example_hypothesis}\"},"
      "{\"role\": \"assistant\", \"content\": \"{example_answer}\"},"
      "{\"role\": \"user\", \"content\": "
      "\"P: {problem_premise} H: {problem_hypothesis}\"}]}");
}

PromptTemplate sfg_template() {
  return parse_template(
      "{\"name\": \"sfg\", \"messages\": ["
      "{\"role\": \"user\", \"content\": "
      "\"P: {example_premise} H: {example_hypothesis}\"},"
      "{\"role\": \"assistant\", \"content\": \"{example_formulation}\"},"
      "{\"role\": \"user\", \"content\": "
      "\"P: {problem_premise} H: {problem_hypothesis}\"}]}");
}

ProblemRecord make_record(const std::string& id, bool label,
                          const char* gold = nullptr) {
  ProblemRecord r;
  r.id = id;
  r.premise = "premise of " + id;
  r.hypothesis = "hypothesis of " + id;
  r.label = label;
  if (gold) r.gold_formulation = gold;
  return r;
}

// Writes the fixture and returns a config whose backend replays it.
RunConfig replay_run(testsupport::TempDir& dir, Setting setting,
                     const std::string& fixture_lines, int parallelism = 1) {
  std::string fixture = dir.file("fixture.jsonl");
  testsupport::write_file(fixture, fixture_lines);
  RunConfig config;
  config.run_label = "test-run";
  config.config_digest = "digest";
  config.setting = setting;
  config.prompt = setting == Setting::Direct ? direct_template()
                                             : sfg_template();
  config.example = make_record("ex", true,
                               "VARS 1\nLAW Top\nOBS a:1\nVALID? 1");
  config.backend.mode = "replay";
  config.backend.fixture_path = fixture;
  config.parallelism = parallelism;
  config.seed = 1;
  return config;
}

json strip_latency(const RunReport& report) {
  json doc = json::parse(report_to_json(report));
  for (auto& outcome : doc["outcomes"]) outcome.erase("latency_us");
  return doc;
}

}  // namespace

TEST_CASE("literal answers classify directly") {
  CHECK(classify_direct("TRUE") == Verdict::True);
  CHECK(classify_direct("true") == Verdict::True);
  CHECK(classify_direct("  False.\n") == Verdict::False);
  CHECK(classify_direct("\"TRUE\"") == Verdict::True);
  CHECK(classify_direct("'FALSE'") == Verdict::False);
  CHECK(classify_direct("\"TRUE.\"") == Verdict::True);
  CHECK(classify_direct("I DON'T KNOW") == Verdict::Unknown);
  CHECK(classify_direct("The answer is TRUE") == Verdict::Unknown);
  CHECK(classify_direct("") == Verdict::Unknown);
  CHECK(classify_direct("TRUEish") == Verdict::Unknown);
}

TEST_CASE("formulations are taken from the first fenced block") {
  CHECK(*extract_formulation("```\nVARS 1\nLAW Top\n```") ==
        "VARS 1\nLAW Top");
  CHECK(*extract_formulation("```smcdel\nVARS 1\n```\n```\nother\n```") ==
        "VARS 1");
  CHECK(*extract_formulation("Sure, here it is:\n```\nVARS 1\n```\nEnjoy!") ==
        "VARS 1");
  CHECK(*extract_formulation("VARS 1\nLAW Top") == "VARS 1\nLAW Top");
  CHECK(*extract_formulation("  padded  ") == "padded");
  CHECK(*extract_formulation("```\nVARS 1") == "VARS 1");  // unterminated
  CHECK_FALSE(extract_formulation("").has_value());
  CHECK_FALSE(extract_formulation("  \n ").has_value());
  CHECK_FALSE(extract_formulation("```\n```").has_value());
}

TEST_CASE("configurations are validated before running") {
  testsupport::TempDir dir;
  RunConfig config = replay_run(dir, Setting::Direct, "");
  CHECK_NOTHROW(validate_config(config));

  SUBCASE("parallelism must be positive") {
    config.parallelism = 0;
    CHECK_THROWS_AS(validate_config(config), ConfigError);
  }
  SUBCASE("the formulation setting needs a gold example") {
    RunConfig sfg = replay_run(dir, Setting::Sfg, "");
    sfg.example.gold_formulation.reset();
    CHECK_THROWS_AS(validate_config(sfg), MissingGoldFormulationError);
  }
  SUBCASE("template placeholders must fit the setting") {
    config.setting = Setting::Sfg;  // template still uses {example_answer}
    CHECK_THROWS_AS(validate_config(config), UnboundPlaceholderError);
  }
  SUBCASE("backend problems surface here") {
    config.backend.fixture_path.clear();
    CHECK_THROWS_AS(validate_config(config), ConfigError);
  }
}

TEST_CASE("direct items classify the replayed answer") {
  testsupport::TempDir dir;
  RunConfig config = replay_run(
      dir, Setting::Direct,
      "{\"id\": \"q1\", \"response\": \"TRUE\"}\n"
      "{\"id\": \"q2\", \"response\": \"I DON'T KNOW\"}\n");
  ItemOutcome good = run_item(config, make_record("q1", true));
  CHECK(good.classification == Verdict::True);
  CHECK(good.label);
  CHECK(good.raw_response == "TRUE");
  CHECK_FALSE(good.failure_reason.has_value());
  CHECK_FALSE(good.formulation.has_value());
  CHECK_FALSE(good.checker_verdict.has_value());

  ItemOutcome unknown = run_item(config, make_record("q2", false));
  CHECK(unknown.classification == Verdict::Unknown);
  REQUIRE(unknown.failure_reason.has_value());
  CHECK(*unknown.failure_reason == "non-literal answer");

  ItemOutcome miss = run_item(config, make_record("q3", true));
  CHECK(miss.classification == Verdict::Unknown);
  REQUIRE(miss.failure_reason.has_value());
  CHECK(miss.failure_reason->find("q3") != std::string::npos);
}

TEST_CASE("formulation items execute the extracted scene") {
  testsupport::TempDir dir;
  RunConfig config = replay_run(
      dir, Setting::Sfg,
      "{\"id\": \"s1\", \"response\": \"```\\nVARS 1\\nLAW Top\\nOBS a:1\\n"
      "VALID? a knows whether 1\\n```\"}\n"
      "{\"id\": \"s2\", \"response\": \"```\\nVARS 1\\nLAW Top\\nOBS a:\\n"
      "VALID? a knows whether 1\\n```\"}\n"
      "{\"id\": \"s3\", \"response\": \"```\\nVARS banana\\n```\"}\n"
      "{\"id\": \"s4\", \"response\": \"   \"}\n");

  ItemOutcome valid_true = run_item(config, make_record("s1", true));
  CHECK(valid_true.classification == Verdict::True);
  REQUIRE(valid_true.checker_verdict.has_value());
  CHECK(*valid_true.checker_verdict);
  REQUIRE(valid_true.formulation.has_value());
  CHECK(valid_true.formulation->find("VARS 1") == 0);

  ItemOutcome valid_false = run_item(config, make_record("s2", true));
  CHECK(valid_false.classification == Verdict::False);
  REQUIRE(valid_false.checker_verdict.has_value());
  CHECK_FALSE(*valid_false.checker_verdict);

  ItemOutcome malformed = run_item(config, make_record("s3", false));
  CHECK(malformed.classification == Verdict::Unknown);
  CHECK_FALSE(malformed.checker_verdict.has_value());
  REQUIRE(malformed.formulation.has_value());  // kept for inspection
  REQUIRE(malformed.failure_reason.has_value());
  CHECK(malformed.failure_reason->find("line") != std::string::npos);

  ItemOutcome empty = run_item(config, make_record("s4", false));
  CHECK(empty.classification == Verdict::Unknown);
  REQUIRE(empty.failure_reason.has_value());
  CHECK(*empty.failure_reason == "empty response");
  CHECK_FALSE(empty.formulation.has_value());
}

TEST_CASE("evaluation runs aggregate, sort, and conserve outcomes") {
  testsupport::TempDir dir;
  std::string fixture_lines;
  std::vector<ProblemRecord> records;
  for (int i = 20; i >= 1; --i) {  // deliberately unsorted input
    std::string id = (i < 10 ? "item-0" : "item-") + std::to_string(i);
    records.push_back(make_record(id, i % 2 == 0));
    std::string response = i % 3 == 0 ? "I DON'T KNOW"
                         : i % 2 == 0 ? "TRUE"
                                      : "FALSE";
    fixture_lines +=
        "{\"id\": \"" + id + "\", \"response\": \"" + response + "\"}\n";
  }
  RunConfig config = replay_run(dir, Setting::Direct, fixture_lines);

  RunReport report = run_eval(config, records);
  REQUIRE(report.outcomes.size() == 20);
  CHECK(std::is_sorted(report.outcomes.begin(), report.outcomes.end(),
                       [](const ItemOutcome& a, const ItemOutcome& b) {
                         return a.record_id < b.record_id;
                       }));
  CHECK(report.run_label == "test-run");
  CHECK(report.config_digest == "digest");
  CHECK(report.example_id == "ex");
  CHECK(report.distribution.total() == 20);  // every item answered something

  SUBCASE("parallel execution changes nothing observable") {
    RunConfig wide = config;
    wide.parallelism = 4;
    RunReport parallel = run_eval(wide, records);
    CHECK(strip_latency(parallel) == strip_latency(report));
  }

  SUBCASE("repeat runs are identical up to timing") {
    RunReport again = run_eval(config, records);
    CHECK(strip_latency(again) == strip_latency(report));
  }

  SUBCASE("empty runs are refused") {
    CHECK_THROWS_AS(run_eval(config, {}), EmptyRunError);
  }
}

TEST_CASE("fine-tune export writes one training line per record") {
  testsupport::TempDir dir;
  std::vector<ProblemRecord> records;
  for (int i = 1; i <= 4; ++i) {
    records.push_back(make_record("ft-" + std::to_string(i), i % 2 == 0,
                                  "VARS 1\nLAW Top\nOBS a:\nVALID? 1"));
  }
  ProblemRecord example =
      make_record("ex", true, "VARS 1\nLAW Top\nOBS a:1\nVALID? 1");

  SUBCASE("direct lines end with the gold answer") {
    std::string out = dir.file("direct.jsonl");
    CHECK(export_finetune(records, Setting::Direct, direct_template(),
                          example, out) == 4);
    std::ifstream in(out);
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
      json doc = json::parse(line);
      REQUIRE(doc.contains("messages"));
      auto messages = doc["messages"];
      REQUIRE(messages.size() == 4);  // rendered prompt + assistant answer
      CHECK(messages.back()["role"] == "assistant");
      std::string expected =
          records[count].label ? "TRUE" : "FALSE";
      CHECK(messages.back()["content"] == expected);

      std::vector<Message> prompt = render_prompt(
          direct_template(), Setting::Direct, example, records[count]);
      for (std::size_t i = 0; i < prompt.size(); ++i) {
        CHECK(messages[i]["role"] == prompt[i].role);
        CHECK(messages[i]["content"] == prompt[i].content);
      }
      ++count;
    }
    CHECK(count == 4);
  }

  SUBCASE("formulation lines end with the gold formulation") {
    std::string out = dir.file("sfg.jsonl");
    CHECK(export_finetune(records, Setting::Sfg, sfg_template(), example,
                          out) == 4);
    std::ifstream in(out);
    std::string line;
    while (std::getline(in, line)) {
      json doc = json::parse(line);
      CHECK(doc["messages"].back()["content"] ==
            "VARS 1\nLAW Top\nOBS a:\nVALID? 1");
    }
  }

  SUBCASE("a record without gold stops the export before any write") {
    records[2].gold_formulation.reset();
    std::string out = dir.file("failed.jsonl");
    CHECK_THROWS_AS(export_finetune(records, Setting::Sfg, sfg_template(),
                                    example, out),
                    MissingGoldFormulationError);
    CHECK_FALSE(std::filesystem::exists(out));
  }

  SUBCASE("an empty export writes an empty file") {
    std::string out = dir.file("empty.jsonl");
    CHECK(export_finetune({}, Setting::Direct, direct_template(), example,
                          out) == 0);
    CHECK(std::filesystem::exists(out));
    CHECK(testsupport::read_file(out).empty());
  }
}
