#include <blp/blp.h>

#include <blp/checker.hpp>
#include <blp/report.hpp>
#include <blp/scenario.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct blp_obligation_report {
  blp::ObligationReport report;
};

struct blp_partition_report {
  blp::PartitionReport report;
};

struct blp_script {
  blp::scenario::Script script;
};

struct blp_trace {
  blp::scenario::Script script;
  blp::scenario::Trace trace;
};

namespace {

thread_local std::string last_error;

blp_status fail(blp_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Maps the exception in flight to a status code.
blp_status translate() {
  try {
    throw;
  } catch (const blp::scenario::ParseError& e) {
    return fail(BLP_ERR_PARSE, e.what());
  } catch (const blp::scenario::BuildError& e) {
    return fail(BLP_ERR_BUILD, e.what());
  } catch (const blp::scenario::RunError& e) {
    return fail(BLP_ERR_RUN, e.what());
  } catch (const blp::NoClauseApplies& e) {
    return fail(BLP_ERR_NO_CLAUSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(BLP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::length_error& e) {
    return fail(BLP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BLP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BLP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BLP_ERR_INTERNAL, "unknown error");
  }
}

template <class F>
blp_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (...) {
    return translate();
  }
}

blp_status copy_out(const std::string& text, char** out) {
  char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
  if (buffer == nullptr) return fail(BLP_ERR_INTERNAL, "out of memory");
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  *out = buffer;
  return BLP_OK;
}

blp::Bounds to_bounds(const blp_bounds& b) {
  return blp::Bounds{b.subjects, b.objects, b.levels, b.categories, b.max_reads, b.max_writes, b.max_matrix};
}

blp::ReportFormat to_format(blp_format format) {
  return format == BLP_FORMAT_MACHINE ? blp::ReportFormat::machine : blp::ReportFormat::text;
}

std::optional<blp::Variant> variant_or_fixed(const char* name) {
  if (name == nullptr) return blp::Variant::fixed;
  return blp::parse_variant(name);
}

}  // namespace

extern "C" {

const char* blp_version(void) { return "1.0.0"; }

const char* blp_last_error(void) { return last_error.c_str(); }

void blp_string_free(char* s) { std::free(s); }

void blp_bounds_default(blp_bounds* bounds) {
  if (bounds == nullptr) return;
  const auto p0 = blp::Bounds::p0();
  *bounds = blp_bounds{p0.subjects,  p0.objects,    p0.levels,    p0.categories,
                       p0.max_reads, p0.max_writes, p0.max_matrix};
}

void blp_check_options_default(blp_check_options* options) {
  if (options == nullptr) return;
  *options = blp_check_options{};
  blp_bounds_default(&options->bounds);
  options->samples = 1000;
  options->workers = 1;
}

void blp_partition_options_default(blp_partition_options* options) {
  if (options == nullptr) return;
  *options = blp_partition_options{};
  blp_bounds_default(&options->bounds);
  options->max_witnesses = 1;
  options->workers = 1;
}

size_t blp_rule_count(void) { return blp::kRuleCount; }

const char* blp_rule_name(size_t index) {
  if (index >= blp::kRuleCount) return nullptr;
  return blp::to_string(blp::kAllRules[index]).data();
}

blp_status blp_check(const blp_check_options* options, blp_obligation_report** out) {
  if (options == nullptr || out == nullptr) return fail(BLP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    blp::CheckOptions opts;
    opts.bounds = to_bounds(options->bounds);
    if (options->random) opts.mode = blp::RandomSampling{options->samples, options->seed};
    if (options->rule != nullptr) {
      opts.rule = blp::parse_rule_name(options->rule);
      if (!opts.rule) return fail(BLP_ERR_INVALID_ARGUMENT, std::string("unknown rule: ") + options->rule);
    }
    if (options->property != nullptr) {
      opts.property = blp::parse_property(options->property);
      if (!opts.property)
        return fail(BLP_ERR_INVALID_ARGUMENT, std::string("unknown property: ") + options->property);
    }
    opts.strict_star_prop = options->strict_star_prop != 0;
    opts.workers = options->workers;
    *out = new blp_obligation_report{blp::check_obligations(opts)};
    return BLP_OK;
  });
}

size_t blp_obligation_report_size(const blp_obligation_report* report) {
  return report == nullptr ? 0 : report->report.results.size();
}

int blp_obligation_report_all_pass(const blp_obligation_report* report) {
  return report != nullptr && report->report.all_pass();
}

blp_status blp_obligation_report_get(const blp_obligation_report* report, size_t index, blp_obligation_info* out) {
  if (report == nullptr || out == nullptr) return fail(BLP_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->report.results.size()) return fail(BLP_ERR_INVALID_ARGUMENT, "index out of range");
  const auto& r = report->report.results[index];
  out->rule = blp::to_string(r.obligation.rule).data();
  out->property = blp::to_string(r.obligation.property).data();
  out->pass = r.pass;
  out->states_checked = r.states_checked;
  out->requests_checked = r.requests_checked;
  out->elapsed_ms = static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count());
  return BLP_OK;
}

blp_status blp_obligation_report_format(const blp_obligation_report* report, blp_format format, int timings,
                                        char** out) {
  if (report == nullptr || out == nullptr) return fail(BLP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    return copy_out(blp::format_report(report->report, to_format(format), blp::FormatOptions{timings != 0}), out);
  });
}

void blp_obligation_report_free(blp_obligation_report* report) { delete report; }

blp_status blp_partition(const char* rule, const blp_partition_options* options, blp_partition_report** out) {
  if (rule == nullptr || options == nullptr || out == nullptr) return fail(BLP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto name = blp::parse_rule_name(rule);
    if (!name) return fail(BLP_ERR_INVALID_ARGUMENT, std::string("unknown rule: ") + rule);
    const auto variant = variant_or_fixed(options->variant);
    if (!variant) return fail(BLP_ERR_INVALID_ARGUMENT, std::string("unknown variant: ") + options->variant);
    blp::PartitionOptions opts;
    opts.max_witnesses = options->max_witnesses;
    opts.workers = options->workers;
    *out = new blp_partition_report{blp::check_partition(*name, *variant, to_bounds(options->bounds), opts)};
    return BLP_OK;
  });
}

uint64_t blp_partition_report_gaps(const blp_partition_report* report) {
  return report == nullptr ? 0 : report->report.gap_count;
}

uint64_t blp_partition_report_overlaps(const blp_partition_report* report) {
  return report == nullptr ? 0 : report->report.overlap_count;
}

int blp_partition_report_clean(const blp_partition_report* report) {
  return report != nullptr && report->report.clean();
}

blp_status blp_partition_report_format(const blp_partition_report* report, blp_format format, char** out) {
  if (report == nullptr || out == nullptr) return fail(BLP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return copy_out(blp::format_report(report->report, to_format(format)), out); });
}

void blp_partition_report_free(blp_partition_report* report) { delete report; }

blp_status blp_script_parse(const char* source, size_t length, blp_script** out, blp_parse_error* error) {
  if ((source == nullptr && length != 0) || out == nullptr) return fail(BLP_ERR_INVALID_ARGUMENT, "null argument");
  try {
    last_error.clear();
    *out = new blp_script{blp::scenario::parse_scenario(std::string_view(source == nullptr ? "" : source, length))};
    return BLP_OK;
  } catch (const blp::scenario::ParseError& e) {
    if (error != nullptr) *error = blp_parse_error{e.line(), e.column()};
    return fail(BLP_ERR_PARSE, e.what());
  } catch (...) {
    return translate();
  }
}

void blp_script_free(blp_script* script) { delete script; }

blp_status blp_script_run(const blp_script* script, const char* variant, blp_trace** out) {
  if (script == nullptr || out == nullptr) return fail(BLP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto v = variant_or_fixed(variant);
    if (!v) return fail(BLP_ERR_INVALID_ARGUMENT, std::string("unknown variant: ") + variant);
    auto trace = blp::scenario::run_scenario(script->script, blp::RuleTable::standard(*v));
    *out = new blp_trace{script->script, std::move(trace)};
    return BLP_OK;
  });
}

int blp_trace_all_expectations_met(const blp_trace* trace) {
  return trace != nullptr && trace->trace.all_expectations_met();
}

blp_status blp_trace_format(const blp_trace* trace, blp_format format, char** out) {
  if (trace == nullptr || out == nullptr) return fail(BLP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return copy_out(blp::format_report(trace->trace, trace->script, to_format(format)), out); });
}

void blp_trace_free(blp_trace* trace) { delete trace; }

}  // extern "C"
