// blp: command-line front end over the C API.
//
//   blp check [--mode exhaustive|random] [bounds] [--rule R] [--property P]
//   blp partition [--rule R|all] [--variant fixed|paperFaithful] [bounds]
//   blp run FILE [--variant V]
//
// Exit status: 0 all pass, 1 obligation failure / partition gap or overlap /
// unmet expectation, 2 usage, parse or input errors.

#include <blp/blp.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct OwnedString {
  char* text = nullptr;
  ~OwnedString() { blp_string_free(text); }
};

int report_error(const char* what) {
  std::cerr << "blp: " << what << ": " << blp_last_error() << '\n';
  return kExitUsage;
}

void add_bounds(CLI::App* cmd, blp_bounds& b) {
  cmd->add_option("--subjects", b.subjects, "Number of subjects")->capture_default_str();
  cmd->add_option("--objects", b.objects, "Number of objects")->capture_default_str();
  cmd->add_option("--levels", b.levels, "Number of security levels")->capture_default_str();
  cmd->add_option("--categories", b.categories, "Number of categories")->capture_default_str();
  cmd->add_option("--max-br", b.max_reads, "Maximum current read accesses")->capture_default_str();
  cmd->add_option("--max-bw", b.max_writes, "Maximum current write accesses")->capture_default_str();
  cmd->add_option("--max-matrix", b.max_matrix, "Maximum access matrix entries")->capture_default_str();
}

const std::map<std::string, blp_format> kFormats{{"text", BLP_FORMAT_TEXT}, {"machine", BLP_FORMAT_MACHINE}};

void add_format(CLI::App* cmd, blp_format& format) {
  cmd->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->default_str("text");
}

std::string all_rules() {
  std::string names;
  for (size_t i = 0; i < blp_rule_count(); ++i) names += std::string(i ? ", " : "") + blp_rule_name(i);
  return names;
}

int run_check(const blp_check_options& options, blp_format format, bool timings) {
  blp_obligation_report* report = nullptr;
  if (blp_check(&options, &report) != BLP_OK) return report_error("check");
  std::unique_ptr<blp_obligation_report, decltype(&blp_obligation_report_free)> owner(report,
                                                                                       blp_obligation_report_free);
  OwnedString text;
  if (blp_obligation_report_format(report, format, timings, &text.text) != BLP_OK) return report_error("check");
  std::cout << text.text;
  return blp_obligation_report_all_pass(report) ? 0 : kExitFailure;
}

int run_partition(const std::string& rule, const blp_partition_options& options, blp_format format) {
  std::vector<std::string> rules;
  if (rule == "all") {
    for (size_t i = 0; i < blp_rule_count(); ++i) rules.emplace_back(blp_rule_name(i));
  } else {
    rules.push_back(rule);
  }
  int status = 0;
  for (size_t i = 0; i < rules.size(); ++i) {
    blp_partition_report* report = nullptr;
    if (blp_partition(rules[i].c_str(), &options, &report) != BLP_OK) return report_error("partition");
    std::unique_ptr<blp_partition_report, decltype(&blp_partition_report_free)> owner(report,
                                                                                      blp_partition_report_free);
    OwnedString text;
    if (blp_partition_report_format(report, format, &text.text) != BLP_OK) return report_error("partition");
    if (i != 0 && format == BLP_FORMAT_TEXT) std::cout << '\n';
    std::cout << text.text;
    if (!blp_partition_report_clean(report)) status = kExitFailure;
  }
  return status;
}

int run_scenario(const std::string& path, const std::string& variant, blp_format format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "blp: cannot open " << path << '\n';
    return kExitUsage;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string source = buffer.str();

  blp_script* script = nullptr;
  blp_parse_error where{};
  if (blp_script_parse(source.data(), source.size(), &script, &where) != BLP_OK) {
    std::cerr << path << ':' << where.line << ':' << where.column << ": " << blp_last_error() << '\n';
    return kExitUsage;
  }
  std::unique_ptr<blp_script, decltype(&blp_script_free)> script_owner(script, blp_script_free);

  blp_trace* trace = nullptr;
  if (blp_script_run(script, variant.c_str(), &trace) != BLP_OK) {
    std::cerr << path << ": " << blp_last_error() << '\n';
    return kExitUsage;
  }
  std::unique_ptr<blp_trace, decltype(&blp_trace_free)> trace_owner(trace, blp_trace_free);
  OwnedString text;
  if (blp_trace_format(trace, format, &text.text) != BLP_OK) return report_error("run");
  std::cout << text.text;
  if (format == BLP_FORMAT_TEXT) {
    std::cout << (blp_trace_all_expectations_met(trace) ? "ALL EXPECTATIONS MET\n" : "EXPECTATION FAILED\n");
  }
  return blp_trace_all_expectations_met(trace) ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-LaPadula reference monitor: obligation checker, partition analysis and scenario runner",
               "blp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", blp_version());

  blp_check_options check;
  blp_check_options_default(&check);
  std::string mode = "exhaustive";
  std::string check_rule, check_property;
  blp_format check_format = BLP_FORMAT_TEXT;
  bool no_timing = false;
  bool strict = false;
  auto* check_cmd = app.add_subcommand("check", "Check the rule x property obligations");
  add_bounds(check_cmd, check.bounds);
  check_cmd->add_option("--mode", mode, "Search mode")
      ->check(CLI::IsMember({"exhaustive", "random"}))
      ->capture_default_str();
  check_cmd->add_option("--samples", check.samples, "Samples in random mode")->capture_default_str();
  check_cmd->add_option("--seed", check.seed, "Seed in random mode")->capture_default_str();
  check_cmd->add_option("--rule", check_rule, "Only this rule (" + all_rules() + ")");
  check_cmd->add_option("--property", check_property,
                        "Only this property (seccond, starprop, foFunctional, fsFunctional, ranBrInDomM, ranBwInDomM)");
  check_cmd->add_option("--workers", check.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  check_cmd->add_flag("--no-timing", no_timing, "Print elapsed times as 0");
  check_cmd->add_flag("--strict-starprop", strict, "Require classified objects in the *-property");
  add_format(check_cmd, check_format);

  blp_partition_options partition;
  blp_partition_options_default(&partition);
  std::string partition_rule = "all";
  std::string partition_variant = "fixed";
  blp_format partition_format = BLP_FORMAT_TEXT;
  auto* partition_cmd = app.add_subcommand("partition", "Check that clause guards are disjoint and covering");
  add_bounds(partition_cmd, partition.bounds);
  partition_cmd->add_option("--rule", partition_rule, "Rule name or 'all'")->capture_default_str();
  partition_cmd->add_option("--variant", partition_variant, "Clause table")
      ->check(CLI::IsMember({"fixed", "paperFaithful"}))
      ->capture_default_str();
  partition_cmd->add_option("--max-witnesses", partition.max_witnesses, "Witnesses kept per distinct request (0 = all)")
      ->capture_default_str();
  partition_cmd->add_option("--workers", partition.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format(partition_cmd, partition_format);

  std::string path;
  std::string run_variant = "fixed";
  blp_format run_format = BLP_FORMAT_TEXT;
  auto* run_cmd = app.add_subcommand("run", "Run a .blp scenario");
  run_cmd->add_option("file", path, "Scenario file")->required();
  run_cmd->add_option("--variant", run_variant, "Clause table")
      ->check(CLI::IsMember({"fixed", "paperFaithful"}))
      ->capture_default_str();
  add_format(run_cmd, run_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "blp: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (check_cmd->parsed()) {
    check.random = mode == "random";
    check.rule = check_rule.empty() ? nullptr : check_rule.c_str();
    check.property = check_property.empty() ? nullptr : check_property.c_str();
    check.strict_star_prop = strict;
    return run_check(check, check_format, !no_timing);
  }
  if (partition_cmd->parsed()) {
    partition.variant = partition_variant.c_str();
    return run_partition(partition_rule, partition, partition_format);
  }
  return run_scenario(path, run_variant, run_format);
}
