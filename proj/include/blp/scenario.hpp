#pragma once

// Line-oriented scenario language (.blp files): state blocks, rule commands,
// assertions and expected decisions.
//
//   state
//     subject s1 level 1 cats {cia}
//     object  o1 level 1 cats {f14}
//     object  o3                       # declared, unclassified
//     grant o1 s1 read
//     reading s1 o1
//   end
//   get-write s2 o2
//   expect yes
//   assert seccond starprop

#include <blp/rules.hpp>
#include <blp/state.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace blp::scenario {

struct SubjectDecl {
  SubjectId id;
  std::optional<SecurityClass> cls;
  friend bool operator==(const SubjectDecl&, const SubjectDecl&) = default;
};
struct ObjectDecl {
  ObjectId id;
  std::optional<SecurityClass> cls;
  friend bool operator==(const ObjectDecl&, const ObjectDecl&) = default;
};
struct GrantDecl {
  ObjectId object;
  SubjectId subject;
  MatrixMode mode;
  friend bool operator==(const GrantDecl&, const GrantDecl&) = default;
};
struct ReadingDecl {
  SubjectId subject;
  ObjectId object;
  friend bool operator==(const ReadingDecl&, const ReadingDecl&) = default;
};
struct WritingDecl {
  SubjectId subject;
  ObjectId object;
  friend bool operator==(const WritingDecl&, const WritingDecl&) = default;
};

using Decl = std::variant<SubjectDecl, ObjectDecl, GrantDecl, ReadingDecl, WritingDecl>;

enum class Predicate : std::uint8_t { sec_cond, star_prop, well_formed };
std::string_view to_string(Predicate predicate);

struct StateBlock {
  std::vector<Decl> decls;
  friend bool operator==(const StateBlock&, const StateBlock&) = default;
};
struct Command {
  Request request;
  friend bool operator==(const Command&, const Command&) = default;
};
struct Assert {
  std::vector<Predicate> predicates;
  friend bool operator==(const Assert&, const Assert&) = default;
};
struct Expect {
  Decision decision;
  friend bool operator==(const Expect&, const Expect&) = default;
};

using Statement = std::variant<StateBlock, Command, Assert, Expect>;

struct Script {
  std::vector<Statement> statements;
  std::vector<std::size_t> lines;  // 1-based source line of each statement; not part of equality

  friend bool operator==(const Script& a, const Script& b) { return a.statements == b.statements; }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string message, std::string token);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
  std::string token_;
};

/// Throws ParseError at the first offending token.
Script parse_scenario(std::string_view source);

class BuildError : public std::runtime_error {
 public:
  BuildError(std::string invariant, std::string detail);
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// Throws BuildError naming the violated type invariant.
SystemState build_state(const std::vector<Decl>& decls);

/// Declarations that rebuild exactly `st` (bare declarations for identifiers
/// without a class).
std::vector<Decl> decls_of(const SystemState& st);

// Canonical printing. print_script output re-parses to an equal Script.

std::string print_class(const SecurityClass& cls);
std::string print_state(const SystemState& st);
std::string print_request(const Request& request);
std::string print_script(const Script& script);

class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateLoaded {
  friend bool operator==(const StateLoaded&, const StateLoaded&) = default;
};
struct AssertionVerdict {
  Predicate predicate;
  bool holds;
  friend bool operator==(const AssertionVerdict&, const AssertionVerdict&) = default;
};
struct ExpectVerdict {
  Decision expected;
  Decision actual;
  bool met() const { return expected == actual; }
  friend bool operator==(const ExpectVerdict&, const ExpectVerdict&) = default;
};

struct TraceEntry {
  std::size_t statement;
  std::variant<StateLoaded, Outcome, std::vector<AssertionVerdict>, ExpectVerdict> result;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct Trace {
  std::vector<TraceEntry> entries;
  SystemState final_state;
  std::optional<std::size_t> failed_at;  // statement index of the first failed assert/expect

  bool all_expectations_met() const { return !failed_at.has_value(); }
  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Executes the script against `table` (the standard fixed table by default).
/// Throws RunError for a command with no current state, and BuildError /
/// NoClauseApplies from the corresponding layers.
Trace run_scenario(const Script& script, const RuleTable& table = RuleTable::standard());

}  // namespace blp::scenario
