#pragma once

// Text and machine renderings of checker reports and scenario traces. Every
// state is printed as a scenario `state ... end` block so witnesses can be
// pasted into a .blp file.

#include <blp/checker.hpp>
#include <blp/scenario.hpp>

#include <string>

namespace blp {

enum class ReportFormat { text, machine };

struct FormatOptions {
  /// When false, elapsed times print as 0 so reports are byte-comparable.
  bool timings = true;
};

/// Machine format: one `RULE\tPROPERTY\tpass|fail\tSTATES\tREQUESTS\tELAPSED_MS`
/// line per obligation, then a witness block per failure.
std::string format_report(const ObligationReport& report, ReportFormat format, FormatOptions options = {});

/// Machine format: `RULE\tVARIANT\tclean|gap|overlap|gap+overlap\tGAPS\tOVERLAPS\tSTATES\tREQUESTS`,
/// then witness blocks.
std::string format_report(const PartitionReport& report, ReportFormat format);

/// Entries, then the final state block. Machine format uses one
/// tab-separated line per entry.
std::string format_report(const scenario::Trace& trace, const scenario::Script& script, ReportFormat format);

}  // namespace blp
