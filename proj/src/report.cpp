#include <blp/report.hpp>

#include <iomanip>
#include <sstream>

namespace blp {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Before-state, request and failing assertion form a runnable scenario; the
// after-state follows as comments.
void write_counterexample(std::ostream& out, const ObligationResult& result) {
  const auto& cex = *result.counterexample;
  out << "\n# counterexample: " << to_string(result.obligation.rule) << ' ' << to_string(cex.violated) << '\n'
      << "# clause " << cex.clause << " decided " << to_string(cex.decision) << '\n'
      << scenario::print_state(cex.before) << scenario::print_request(cex.request) << '\n'
      << "expect " << to_string(cex.decision) << '\n'
      << "assert " << to_string(cex.violated) << '\n'
      << "# after:\n";
  std::istringstream after(scenario::print_state(cex.after));
  for (std::string line; std::getline(after, line);) out << "#   " << line << '\n';
}

void write_partition_witness(std::ostream& out, std::string_view kind, std::size_t index,
                             const PartitionWitness& w) {
  out << "\n# " << kind << ' ' << index << ": matched ";
  if (w.matched.empty()) out << "no clause";
  for (std::size_t i = 0; i < w.matched.size(); ++i) out << (i ? ", " : "") << w.matched[i];
  out << '\n' << scenario::print_state(w.state) << scenario::print_request(w.request) << '\n';
}

long long elapsed_ms(const ObligationResult& r, const FormatOptions& options) {
  if (!options.timings) return 0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count();
}

}  // namespace

std::string format_report(const ObligationReport& report, ReportFormat format, FormatOptions options) {
  std::ostringstream out;
  std::size_t failures = 0;
  if (format == ReportFormat::machine) {
    for (const auto& r : report.results) {
      out << to_string(r.obligation.rule) << '\t' << to_string(r.obligation.property) << '\t'
          << (r.pass ? "pass" : "fail") << '\t' << r.states_checked << '\t' << r.requests_checked << '\t'
          << elapsed_ms(r, options) << '\n';
    }
  } else {
    out << std::left << std::setw(14) << "rule" << std::setw(14) << "property" << std::setw(8) << "result"
        << std::right << std::setw(12) << "states" << std::setw(14) << "requests" << std::setw(12) << "rule ms"
        << '\n';
    for (const auto& r : report.results) {
      out << std::left << std::setw(14) << to_string(r.obligation.rule) << std::setw(14)
          << to_string(r.obligation.property) << std::setw(8) << (r.pass ? "pass" : "FAIL") << std::right
          << std::setw(12) << r.states_checked << std::setw(14) << r.requests_checked << std::setw(12)
          << elapsed_ms(r, options) << '\n';
    }
  }
  for (const auto& r : report.results) {
    if (r.pass) continue;
    ++failures;
    write_counterexample(out, r);
  }
  if (format == ReportFormat::text) {
    out << '\n'
        << report.results.size() << " obligations: " << report.results.size() - failures << " pass, " << failures
        << " fail\n";
  }
  return out.str();
}

std::string format_report(const PartitionReport& report, ReportFormat format) {
  std::ostringstream out;
  const char* status = report.clean()                                            ? "clean"
                       : report.gap_count != 0 && report.overlap_count != 0 ? "gap+overlap"
                       : report.gap_count != 0                                  ? "gap"
                                                                                : "overlap";
  if (format == ReportFormat::machine) {
    out << to_string(report.rule) << '\t' << to_string(report.variant) << '\t' << status << '\t'
        << report.gap_count << '\t' << report.overlap_count << '\t' << report.states_checked << '\t'
        << report.requests_checked << '\n';
  } else {
    out << "partition " << to_string(report.rule) << " (" << to_string(report.variant) << "): " << status << '\n'
        << "  states " << report.states_checked << ", requests " << report.requests_checked << '\n'
        << "  gaps " << report.gap_count << ", overlaps " << report.overlap_count << '\n';
  }
  for (std::size_t i = 0; i < report.gaps.size(); ++i) write_partition_witness(out, "gap", i + 1, report.gaps[i]);
  for (std::size_t i = 0; i < report.overlaps.size(); ++i)
    write_partition_witness(out, "overlap", i + 1, report.overlaps[i]);
  return out.str();
}

std::string format_report(const scenario::Trace& trace, const scenario::Script& script, ReportFormat format) {
  using namespace scenario;
  std::ostringstream out;
  const bool machine = format == ReportFormat::machine;
  for (const auto& entry : trace.entries) {
    const auto line = entry.statement < script.lines.size() ? script.lines[entry.statement] : 0;
    const auto& statement = script.statements.at(entry.statement);
    if (machine)
      out << entry.statement << '\t';
    else
      out << "[line " << line << "] ";
    std::visit(Overloaded{
                   [&](const StateLoaded&) { out << (machine ? "state\tloaded" : "state loaded"); },
                   [&](const Outcome& o) {
                     const auto& request = std::get<Command>(statement).request;
                     if (machine)
                       out << "command\t" << print_request(request) << '\t' << to_string(o.decision) << '\t'
                           << o.clause;
                     else
                       out << print_request(request) << " -> " << to_string(o.decision) << " (" << o.clause << ')';
                   },
                   [&](const std::vector<AssertionVerdict>& verdicts) {
                     out << (machine ? "assert" : "assert");
                     for (const auto& v : verdicts) {
                       if (machine)
                         out << '\t' << to_string(v.predicate) << '=' << (v.holds ? "holds" : "fails");
                       else
                         out << ' ' << to_string(v.predicate) << ": " << (v.holds ? "holds" : "FAILS");
                     }
                   },
                   [&](const ExpectVerdict& v) {
                     if (machine)
                       out << "expect\t" << to_string(v.expected) << '\t' << to_string(v.actual) << '\t'
                           << (v.met() ? "met" : "unmet");
                     else
                       out << "expect " << to_string(v.expected) << ": "
                           << (v.met() ? "met" : "UNMET, decision was " + std::string(to_string(v.actual)));
                   },
               },
               entry.result);
    out << '\n';
  }
  if (machine) {
    if (trace.failed_at)
      out << "verdict\tfailedAt\t" << *trace.failed_at << '\n';
    else
      out << "verdict\tallExpectationsMet\n";
  } else {
    out << "final state:\n";
  }
  out << print_state(trace.final_state);
  return out.str();
}

}  // namespace blp
