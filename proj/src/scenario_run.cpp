#include <blp/scenario.hpp>

namespace blp::scenario {

BuildError::BuildError(std::string invariant, std::string detail)
    : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

SystemState build_state(const std::vector<Decl>& decls) {
  StateBuilder builder;
  for (const auto& decl : decls) {
    if (const auto* d = std::get_if<SubjectDecl>(&decl)) {
      if (d->cls) builder.subject(d->id, *d->cls);
    } else if (const auto* d = std::get_if<ObjectDecl>(&decl)) {
      if (d->cls) builder.object(d->id, *d->cls);
    } else if (const auto* d = std::get_if<GrantDecl>(&decl)) {
      builder.grant(d->object, d->subject, d->mode);
    } else if (const auto* d = std::get_if<ReadingDecl>(&decl)) {
      builder.reading(d->subject, d->object);
    } else if (const auto* d = std::get_if<WritingDecl>(&decl)) {
      builder.writing(d->subject, d->object);
    }
  }

  const auto st = builder.build_unchecked();
  if (!fo_functional(st)) throw BuildError("foFunctional", "an object is declared with two classes");
  if (!fs_functional(st)) throw BuildError("fsFunctional", "a subject is declared with two classes");
  for (const auto& a : st.reads())
    if (!st.in_matrix_domain(a.object))
      throw BuildError("ranBrInDomM", "reading " + std::string(a.subject.name()) + " " +
                                          std::string(a.object.name()) + ": object has no grant");
  for (const auto& a : st.writes())
    if (!st.in_matrix_domain(a.object))
      throw BuildError("ranBwInDomM", "writing " + std::string(a.subject.name()) + " " +
                                          std::string(a.object.name()) + ": object has no grant");
  return st;
}

Trace run_scenario(const Script& script, const RuleTable& table) {
  Trace trace;
  std::optional<SystemState> current;
  std::optional<Decision> last_decision;

  for (std::size_t i = 0; i < script.statements.size(); ++i) {
    const auto& statement = script.statements[i];
    if (const auto* block = std::get_if<StateBlock>(&statement)) {
      current = build_state(block->decls);
      trace.entries.push_back({i, StateLoaded{}});
      continue;
    }
    if (!current) throw RunError("statement " + std::to_string(i) + " runs before any state block");

    if (const auto* command = std::get_if<Command>(&statement)) {
      auto outcome = table.apply(*current, command->request);
      current = outcome.after;
      last_decision = outcome.decision;
      trace.entries.push_back({i, std::move(outcome)});
    } else if (const auto* assertion = std::get_if<Assert>(&statement)) {
      std::vector<AssertionVerdict> verdicts;
      bool ok = true;
      for (auto p : assertion->predicates) {
        bool holds = p == Predicate::sec_cond    ? sec_cond(*current)
                     : p == Predicate::star_prop ? star_prop(*current)
                                                 : well_formed(*current);
        verdicts.push_back({p, holds});
        ok = ok && holds;
      }
      trace.entries.push_back({i, std::move(verdicts)});
      if (!ok) {
        trace.failed_at = i;
        break;
      }
    } else if (const auto* expect = std::get_if<Expect>(&statement)) {
      if (!last_decision) throw RunError("expect at statement " + std::to_string(i) + " has no preceding command");
      ExpectVerdict verdict{expect->decision, *last_decision};
      trace.entries.push_back({i, verdict});
      if (!verdict.met()) {
        trace.failed_at = i;
        break;
      }
    }
  }
  if (current) trace.final_state = *current;
  return trace;
}

}  // namespace blp::scenario
