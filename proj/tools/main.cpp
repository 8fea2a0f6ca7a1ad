#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "delcheck/bdd.hpp"
#include "delcheck/checker.hpp"
#include "delcheck/dataset.hpp"
#include "delcheck/errors.hpp"
#include "delcheck/generator.hpp"
#include "delcheck/metrics.hpp"
#include "delcheck/parser.hpp"
#include "delcheck/pipeline.hpp"
#include "delcheck/prompt.hpp"
#include "eval_config.hpp"

namespace {

using namespace delcheck;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw WriteFailureError(path);
  out << text;
  if (!out) throw WriteFailureError(path);
}

int cmd_check(const std::string& file, const std::string& dot_path) {
  Scene scene = parse_scene(slurp(file));
  QueryResult result = check_valid(scene);
  std::cout << (result.verdict ? "TRUE" : "FALSE") << "\n"
            << "states=" << result.state_count
            << " nodes=" << result.peak_node_count
            << " micros=" << result.elapsed.count() << "\n";
  if (!dot_path.empty()) {
    BddManager manager(scene.vocabulary);
    KnowledgeState state = make_state(manager, scene);
    write_text(dot_path, manager.to_dot(state.current_law));
  }
  return 0;
}

int cmd_oracle(const std::string& file) {
  Scene scene = parse_scene(slurp(file));
  std::cout << (check_valid_explicit(scene) ? "TRUE" : "FALSE") << "\n";
  return 0;
}

int cmd_verify(int count, std::uint64_t seed, const GenOptions& opts) {
  VerifySummary summary = verify_equivalence(opts, seed, count);
  std::cout << summary.agreed << "/" << summary.total << " agree\n";
  if (summary.agreed == summary.total) return 0;
  if (summary.first_mismatch) {
    std::cerr << print_scene(*summary.first_mismatch);
  }
  return 1;
}

int cmd_eval(const std::string& config_path, const EvalOverrides& overrides) {
  EvalSpec spec = load_eval_spec(config_path, overrides);
  std::vector<ProblemRecord> records =
      load_dataset(spec.dataset_path, spec.fields);
  std::vector<ProblemRecord> sampled =
      sample_balanced(records, spec.sample_size, spec.run.seed);
  RunReport report = run_eval(spec.run, sampled);
  emit_report(report, spec.out_path, "machine");
  std::cout << render_table({report});
  std::cerr << "report written to " << spec.out_path << "\n";
  return 0;
}

int cmd_export_ft(const std::string& dataset_path,
                  const std::string& setting_name,
                  const std::string& template_path,
                  const std::string& example_path, std::size_t n,
                  std::uint64_t seed, const std::string& out_path,
                  const std::string& field_map_path) {
  FieldMap fields;
  if (!field_map_path.empty()) fields = load_field_map(field_map_path);
  Setting setting = setting_from_string(setting_name);
  PromptTemplate tmpl = load_template(template_path);
  ProblemRecord example = load_example(example_path, fields);
  std::vector<ProblemRecord> sampled =
      sample_balanced(load_dataset(dataset_path, fields), n, seed);
  std::size_t written =
      export_finetune(sampled, setting, tmpl, example, out_path);
  std::cout << written << " written\n";
  return 0;
}

int cmd_sample(const std::string& dataset_path, std::size_t n,
               std::uint64_t seed, const std::string& out_path,
               const std::string& field_map_path) {
  FieldMap fields;
  if (!field_map_path.empty()) fields = load_field_map(field_map_path);
  std::vector<ProblemRecord> sampled =
      sample_balanced(load_dataset(dataset_path, fields), n, seed);
  std::ostringstream lines;
  for (const ProblemRecord& record : sampled) {
    nlohmann::json line = {{"id", record.id},
                           {"premise", record.premise},
                           {"hypothesis", record.hypothesis},
                           {"label", record.label}};
    if (record.gold_formulation) {
      line["smcdel_problem"] = *record.gold_formulation;
    }
    lines << line.dump() << "\n";
  }
  if (out_path.empty()) {
    std::cout << lines.str();
  } else {
    write_text(out_path, lines.str());
    std::cerr << sampled.size() << " records written to " << out_path << "\n";
  }
  return 0;
}

int cmd_report(const std::vector<std::string>& in_paths,
               const std::string& format, const std::string& out_path,
               const std::string& csv_path) {
  std::vector<RunReport> reports;
  reports.reserve(in_paths.size());
  for (const std::string& path : in_paths) {
    reports.push_back(load_report(path));
  }
  std::string payload;
  if (format == "table") {
    payload = render_table(reports);
  } else if (format == "machine") {
    if (reports.size() != 1) {
      throw ConfigError("machine format takes exactly one input report");
    }
    payload = report_to_json(reports.front());
  } else {
    throw ConfigError("format must be 'table' or 'machine'");
  }
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    write_text(out_path, payload);
  }
  if (!csv_path.empty()) {
    if (reports.size() != 1) {
      throw ConfigError("distribution export takes exactly one input report");
    }
    write_text(csv_path, render_distribution_csv(reports.front()));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic model checker and evaluation harness for epistemic "
               "scenes"};
  app.require_subcommand(1);

  int rc = 0;

  auto* check = app.add_subcommand(
      "check", "Decide a scene file symbolically and print the verdict");
  std::string check_file;
  std::string check_dot;
  check->add_option("file", check_file, "scene file")->required();
  check->add_option("--dot", check_dot,
                    "write the state-law diagram as DOT text");
  check->callback([&] { rc = cmd_check(check_file, check_dot); });

  auto* oracle = app.add_subcommand(
      "oracle", "Decide a scene file by brute-force state enumeration");
  std::string oracle_file;
  oracle->add_option("file", oracle_file, "scene file")->required();
  oracle->callback([&] { rc = cmd_oracle(oracle_file); });

  auto* verify = app.add_subcommand(
      "verify",
      "Compare symbolic and brute-force verdicts on random scenes");
  int verify_count = 0;
  std::uint64_t verify_seed = 0;
  GenOptions gen;
  verify->add_option("--count", verify_count, "number of scenes")
      ->required()
      ->check(CLI::Range(1, 1 << 30));
  verify->add_option("--seed", verify_seed, "generator seed")->required();
  verify->add_option("--max-props", gen.max_props, "vocabulary bound");
  verify->add_option("--max-agents", gen.max_agents, "agent bound");
  verify->add_option("--max-depth", gen.max_depth, "query depth bound");
  verify->callback([&] { rc = cmd_verify(verify_count, verify_seed, gen); });

  auto* eval = app.add_subcommand(
      "eval", "Run a configured evaluation and write the report");
  std::string eval_config;
  EvalOverrides overrides;
  std::string eval_out;
  std::uint64_t eval_seed = 0;
  eval->add_option("config", eval_config, "evaluation config file")
      ->required();
  auto* eval_out_opt =
      eval->add_option("--out", eval_out, "report path override");
  auto* eval_seed_opt =
      eval->add_option("--seed", eval_seed, "sampling seed override");
  eval->callback([&] {
    if (*eval_out_opt) overrides.out = eval_out;
    if (*eval_seed_opt) overrides.seed = eval_seed;
    rc = cmd_eval(eval_config, overrides);
  });

  auto* export_ft = app.add_subcommand(
      "export-ft", "Write a chat-format fine-tuning file");
  std::string ft_dataset, ft_setting, ft_template, ft_example, ft_out;
  std::string ft_field_map;
  std::size_t ft_n = 0;
  std::uint64_t ft_seed = 0;
  export_ft->add_option("--dataset", ft_dataset, "source records")
      ->required();
  export_ft->add_option("--setting", ft_setting, "direct or sfg")
      ->required();
  export_ft->add_option("--template", ft_template, "prompt template file")
      ->required();
  export_ft->add_option("--example", ft_example, "one-shot example record")
      ->required();
  export_ft->add_option("--n", ft_n, "sample size (balanced, even)")
      ->required();
  export_ft->add_option("--seed", ft_seed, "sampling seed")->required();
  export_ft->add_option("--out", ft_out, "output file")->required();
  export_ft->add_option("--field-map", ft_field_map,
                        "field-name mapping file");
  export_ft->callback([&] {
    rc = cmd_export_ft(ft_dataset, ft_setting, ft_template, ft_example, ft_n,
                       ft_seed, ft_out, ft_field_map);
  });

  auto* sample = app.add_subcommand(
      "sample", "Draw a balanced seeded sample and print it as JSON lines");
  std::string sample_dataset, sample_out, sample_field_map;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  sample->add_option("--dataset", sample_dataset, "source records")
      ->required();
  sample->add_option("--n", sample_n, "sample size (balanced, even)")
      ->required();
  sample->add_option("--seed", sample_seed, "sampling seed")->required();
  sample->add_option("--out", sample_out, "output file (default stdout)");
  sample->add_option("--field-map", sample_field_map,
                     "field-name mapping file");
  sample->callback([&] {
    rc = cmd_sample(sample_dataset, sample_n, sample_seed, sample_out,
                    sample_field_map);
  });

  auto* report = app.add_subcommand(
      "report", "Render stored evaluation reports");
  std::vector<std::string> report_in;
  std::string report_format = "table";
  std::string report_out, report_csv;
  report->add_option("--in", report_in, "machine report files")->required();
  report->add_option("--format", report_format, "table or machine")
      ->capture_default_str();
  report->add_option("--out", report_out, "output file (default stdout)");
  report->add_option("--distribution-csv", report_csv,
                     "also write the answer distribution as CSV");
  report->callback([&] {
    rc = cmd_report(report_in, report_format, report_out, report_csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
