// Exercises the shared library through its C header only.
#include <blp/blp.h>

#include <doctest.h>

#include <cstring>
#include <string>

namespace {

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  blp_string_free(s);
  return out;
}

blp_bounds tiny() {
  blp_bounds b;
  blp_bounds_default(&b);
  b.subjects = 1;
  b.objects = 1;
  b.levels = 1;
  b.categories = 0;
  b.max_reads = 1;
  b.max_writes = 1;
  b.max_matrix = 1;
  return b;
}

const char kSim[] =
    "state\n"
    "  subject s1 level 1 cats {cia}\n"
    "  subject s2 level 2 cats {f14, cia, f15}\n"
    "  object o1 level 1 cats {f14}\n"
    "  object o2 level 2 cats {f14, f15}\n"
    "  grant o1 s1 read\n  grant o1 s2 write\n  grant o2 s2 read\n  grant o2 s2 write\n"
    "end\n"
    "get-write s2 o2\nexpect yes\nget-read s2 o2\nexpect yes\n";

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("defaults are the desk profile") {
    blp_bounds b;
    blp_bounds_default(&b);
    CHECK(b.subjects == 2);
    CHECK(b.objects == 2);
    CHECK(b.levels == 2);
    CHECK(b.categories == 1);
    CHECK(b.max_reads == 2);
    CHECK(b.max_writes == 2);
    CHECK(b.max_matrix == 3);
    blp_check_options o;
    blp_check_options_default(&o);
    CHECK(o.random == 0);
    CHECK(o.workers == 1);
    CHECK(o.rule == nullptr);
    CHECK(std::string(blp_version()) == "1.0.0");
  }

  TEST_CASE("rule names") {
    CHECK(blp_rule_count() == 10);
    CHECK(std::string(blp_rule_name(0)) == "getRead");
    CHECK(std::string(blp_rule_name(9)) == "deleteObject");
    CHECK(blp_rule_name(10) == nullptr);
  }

  TEST_CASE("check and inspect a report") {
    blp_check_options o;
    blp_check_options_default(&o);
    o.bounds = tiny();
    blp_obligation_report* report = nullptr;
    REQUIRE(blp_check(&o, &report) == BLP_OK);
    CHECK(blp_obligation_report_size(report) == 60);
    CHECK(blp_obligation_report_all_pass(report));
    blp_obligation_info info;
    REQUIRE(blp_obligation_report_get(report, 8, &info) == BLP_OK);
    CHECK(std::string(info.rule) == "getWrite");
    CHECK(std::string(info.property) == "foFunctional");
    CHECK(info.pass == 1);
    CHECK(info.states_checked == 52);
    CHECK(blp_obligation_report_get(report, 60, &info) == BLP_ERR_INVALID_ARGUMENT);
    char* text = nullptr;
    REQUIRE(blp_obligation_report_format(report, BLP_FORMAT_MACHINE, 0, &text) == BLP_OK);
    CHECK(take(text).rfind("getRead\tseccond\tpass\t", 0) == 0);
    blp_obligation_report_free(report);
  }

  TEST_CASE("bad arguments") {
    blp_check_options o;
    blp_check_options_default(&o);
    o.bounds = tiny();
    o.rule = "getExecute";
    blp_obligation_report* report = nullptr;
    CHECK(blp_check(&o, &report) == BLP_ERR_INVALID_ARGUMENT);
    CHECK(std::string(blp_last_error()).find("getExecute") != std::string::npos);
    CHECK(report == nullptr);

    o.rule = nullptr;
    o.property = "liveness";
    CHECK(blp_check(&o, &report) == BLP_ERR_INVALID_ARGUMENT);

    o.property = nullptr;
    o.random = 1;
    o.samples = 0;
    CHECK(blp_check(&o, &report) == BLP_ERR_INVALID_ARGUMENT);

    CHECK(blp_check(nullptr, &report) == BLP_ERR_INVALID_ARGUMENT);
    CHECK(blp_obligation_report_size(nullptr) == 0);
    blp_obligation_report_free(nullptr);

    blp_partition_options p;
    blp_partition_options_default(&p);
    blp_partition_report* partition = nullptr;
    p.variant = "loose";
    CHECK(blp_partition("giveRW", &p, &partition) == BLP_ERR_INVALID_ARGUMENT);
    p.variant = nullptr;
    CHECK(blp_partition("nothing", &p, &partition) == BLP_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("random checks are reproducible") {
    blp_check_options o;
    blp_check_options_default(&o);
    o.random = 1;
    o.samples = 400;
    o.seed = 99;
    std::string texts[2];
    for (auto& t : texts) {
      blp_obligation_report* report = nullptr;
      REQUIRE(blp_check(&o, &report) == BLP_OK);
      char* text = nullptr;
      REQUIRE(blp_obligation_report_format(report, BLP_FORMAT_MACHINE, 0, &text) == BLP_OK);
      t = take(text);
      blp_obligation_report_free(report);
    }
    CHECK(texts[0] == texts[1]);
  }

  TEST_CASE("partition") {
    blp_partition_options p;
    blp_partition_options_default(&p);
    p.bounds = tiny();
    p.bounds.subjects = 2;
    p.bounds.max_matrix = 3;
    p.variant = "paperFaithful";
    blp_partition_report* report = nullptr;
    REQUIRE(blp_partition("giveRW", &p, &report) == BLP_OK);
    CHECK(blp_partition_report_gaps(report) > 0);
    CHECK(blp_partition_report_overlaps(report) == 0);
    CHECK_FALSE(blp_partition_report_clean(report));
    char* text = nullptr;
    REQUIRE(blp_partition_report_format(report, BLP_FORMAT_TEXT, &text) == BLP_OK);
    CHECK(take(text).find("give s1 s2 o1 read") != std::string::npos);
    blp_partition_report_free(report);

    p.variant = "fixed";
    REQUIRE(blp_partition("giveRW", &p, &report) == BLP_OK);
    CHECK(blp_partition_report_clean(report));
    blp_partition_report_free(report);
  }

  TEST_CASE("scenarios") {
    blp_script* script = nullptr;
    REQUIRE(blp_script_parse(kSim, std::strlen(kSim), &script, nullptr) == BLP_OK);
    blp_trace* trace = nullptr;
    REQUIRE(blp_script_run(script, nullptr, &trace) == BLP_OK);
    CHECK(blp_trace_all_expectations_met(trace));
    char* text = nullptr;
    REQUIRE(blp_trace_format(trace, BLP_FORMAT_TEXT, &text) == BLP_OK);
    const auto out = take(text);
    CHECK(out.find("  reading s2 o2\n  writing s2 o2\nend\n") != std::string::npos);
    blp_trace_free(trace);
    blp_script_free(script);
  }

  TEST_CASE("scenario errors") {
    blp_script* script = nullptr;
    blp_parse_error where{};
    const char bad[] = "state\nend\ngive s1 s2\n";
    CHECK(blp_script_parse(bad, std::strlen(bad), &script, &where) == BLP_ERR_PARSE);
    CHECK(where.line == 3);
    CHECK(where.column == 1);
    CHECK(std::string(blp_last_error()).find("4 arguments") != std::string::npos);

    const char unbuildable[] = "state\n  subject s1\n  object o1\n  reading s1 o1\nend\n";
    REQUIRE(blp_script_parse(unbuildable, std::strlen(unbuildable), &script, &where) == BLP_OK);
    blp_trace* trace = nullptr;
    CHECK(blp_script_run(script, nullptr, &trace) == BLP_ERR_BUILD);
    CHECK(std::string(blp_last_error()).find("ranBrInDomM") != std::string::npos);
    blp_script_free(script);

    const char gap[] =
        "state\n  subject s1\n  subject s2\n  object o1\n"
        "  grant o1 s1 read\n  grant o1 s1 ctrl\n  grant o1 s2 read\nend\ngive s1 s2 o1 read\n";
    REQUIRE(blp_script_parse(gap, std::strlen(gap), &script, nullptr) == BLP_OK);
    CHECK(blp_script_run(script, "paperFaithful", &trace) == BLP_ERR_NO_CLAUSE);
    REQUIRE(blp_script_run(script, "fixed", &trace) == BLP_OK);
    blp_trace_free(trace);
    blp_script_free(script);

    CHECK(blp_script_parse(nullptr, 0, &script, nullptr) == BLP_OK);
    blp_script_free(script);
  }
}
