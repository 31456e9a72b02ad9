#include <blp/rules.hpp>

#include <algorithm>
#include <string>

namespace blp {
namespace {

template <class R>
using Condition = bool (*)(const SystemState&, const R&);

template <class R>
using RuleEffect = SystemState (*)(const SystemState&, const R&);

// Builds the clause list for a rule whose normal clause is the conjunction of
// `conds`. Abnormal clause Ek holds when c1..c(k-1) hold and ck fails, so the
// guards are pairwise disjoint and, with all N abnormal clauses present, cover
// every input. `abnormal` < N drops the trailing abnormal clauses.
template <class R, std::size_t N>
ClauseList ordered_clauses(std::string_view rule, const std::array<Condition<R>, N>& conds,
                           RuleEffect<R> effect, std::size_t abnormal = N) {
  ClauseList out;
  out.push_back(RuleClause{
      std::string(rule) + "Ok",
      [conds](const SystemState& st, const Request& req) {
        const auto& r = std::get<R>(req);
        return std::all_of(conds.begin(), conds.end(), [&](auto c) { return c(st, r); });
      },
      [effect](const SystemState& st, const Request& req) { return effect(st, std::get<R>(req)); },
      Decision::yes,
  });
  for (std::size_t k = 0; k < abnormal; ++k) {
    out.push_back(RuleClause{
        std::string(rule) + "E" + std::to_string(k + 1),
        [conds, k](const SystemState& st, const Request& req) {
          const auto& r = std::get<R>(req);
          for (std::size_t i = 0; i < k; ++i)
            if (!conds[i](st, r)) return false;
          return !conds[k](st, r);
        },
        [](const SystemState& st, const Request&) { return st; },
        Decision::no,
    });
  }
  return out;
}

bool classified(const SystemState& st, ObjectId o) { return st.object_class(o) != nullptr; }

// (o2 ⊑ o) for every object o2 the subject reads. Unclassified reads fail.
bool reads_below(const SystemState& st, SubjectId s, ObjectId o) {
  const auto* target = st.object_class(o);
  for (const auto& r : st.reads()) {
    if (r.subject != s) continue;
    const auto* cls = st.object_class(r.object);
    if (target == nullptr || cls == nullptr || !class_leq(*cls, *target)) return false;
  }
  return true;
}

// (o ⊑ o2) for every object o2 the subject writes.
bool writes_above(const SystemState& st, SubjectId s, ObjectId o) {
  const auto* source = st.object_class(o);
  for (const auto& w : st.writes()) {
    if (w.subject != s) continue;
    const auto* cls = st.object_class(w.object);
    if (source == nullptr || cls == nullptr || !class_leq(*source, *cls)) return false;
  }
  return true;
}

ClauseList get_read_clauses() {
  std::array<Condition<GetRead>, 5> conds{
      [](const SystemState& st, const GetRead& r) { return st.permits(r.object, r.subject, MatrixMode::read); },
      [](const SystemState& st, const GetRead& r) { return !st.is_reading(r.subject, r.object); },
      [](const SystemState& st, const GetRead& r) { return classified(st, r.object); },
      [](const SystemState& st, const GetRead& r) {
        const auto* clearance = st.subject_class(r.subject);
        const auto* cls = st.object_class(r.object);
        return clearance != nullptr && cls != nullptr && class_leq(*cls, *clearance);
      },
      [](const SystemState& st, const GetRead& r) { return writes_above(st, r.subject, r.object); },
  };
  return ordered_clauses<GetRead>(
      "getRead", conds, [](const SystemState& st, const GetRead& r) { return st.with_read({r.subject, r.object}); });
}

ClauseList get_write_clauses() {
  std::array<Condition<GetWrite>, 4> conds{
      [](const SystemState& st, const GetWrite& r) { return st.permits(r.object, r.subject, MatrixMode::write); },
      [](const SystemState& st, const GetWrite& r) { return !st.is_writing(r.subject, r.object); },
      [](const SystemState& st, const GetWrite& r) { return classified(st, r.object); },
      [](const SystemState& st, const GetWrite& r) { return reads_below(st, r.subject, r.object); },
  };
  return ordered_clauses<GetWrite>("getWrite", conds, [](const SystemState& st, const GetWrite& r) {
    return st.with_write({r.subject, r.object});
  });
}

ClauseList release_read_clauses() {
  std::array<Condition<ReleaseRead>, 1> conds{
      [](const SystemState& st, const ReleaseRead& r) { return st.is_reading(r.subject, r.object); },
  };
  return ordered_clauses<ReleaseRead>("releaseRead", conds, [](const SystemState& st, const ReleaseRead& r) {
    return st.without_read({r.subject, r.object});
  });
}

ClauseList release_write_clauses() {
  std::array<Condition<ReleaseWrite>, 1> conds{
      [](const SystemState& st, const ReleaseWrite& r) { return st.is_writing(r.subject, r.object); },
  };
  return ordered_clauses<ReleaseWrite>("releaseWrite", conds, [](const SystemState& st, const ReleaseWrite& r) {
    return st.without_write({r.subject, r.object});
  });
}

ClauseList give_rw_clauses(Variant variant) {
  std::array<Condition<GiveRW>, 4> conds{
      [](const SystemState&, const GiveRW& r) { return r.mode != MatrixMode::ctrl; },
      [](const SystemState& st, const GiveRW& r) { return st.permits(r.object, r.giver, r.mode); },
      [](const SystemState& st, const GiveRW& r) { return st.permits(r.object, r.giver, MatrixMode::ctrl); },
      [](const SystemState& st, const GiveRW& r) { return !st.permits(r.object, r.receiver, r.mode); },
  };
  // Without E4 the case "receiver already holds the mode" matches no clause.
  std::size_t abnormal = variant == Variant::fixed ? 4 : 3;
  return ordered_clauses<GiveRW>(
      "giveRW", conds,
      [](const SystemState& st, const GiveRW& r) { return st.with_permission({r.object, r.receiver, r.mode}); },
      abnormal);
}

template <class R, AccessMode Mode>
ClauseList rescind_clauses(std::string_view name) {
  std::array<Condition<R>, 2> conds{
      [](const SystemState& st, const R& r) { return st.permits(r.object, r.rescinder, MatrixMode::ctrl); },
      [](const SystemState& st, const R& r) { return st.permits(r.object, r.target, to_matrix_mode(Mode)); },
  };
  return ordered_clauses<R>(name, conds, [](const SystemState& st, const R& r) {
    auto next = st.without_permission({r.object, r.target, to_matrix_mode(Mode)});
    if constexpr (Mode == AccessMode::read)
      return next.without_read({r.target, r.object});
    else
      return next.without_write({r.target, r.object});
  });
}

ClauseList change_class_clauses() {
  std::array<Condition<ChangeClass>, 2> conds{
      [](const SystemState& st, const ChangeClass& r) { return classified(st, r.object); },
      [](const SystemState& st, const ChangeClass& r) { return !st.is_accessed(r.object); },
  };
  return ordered_clauses<ChangeClass>("changeClass", conds, [](const SystemState& st, const ChangeClass& r) {
    return st.with_object_class(r.object, r.cls);
  });
}

ClauseList create_object_clauses() {
  std::array<Condition<CreateObject>, 1> conds{
      [](const SystemState& st, const CreateObject& r) {
        return !classified(st, r.object) && !st.in_matrix_domain(r.object);
      },
  };
  return ordered_clauses<CreateObject>("createObject", conds, [](const SystemState& st, const CreateObject& r) {
    return st.with_object_class(r.object, r.cls).with_permission({r.object, r.subject, MatrixMode::ctrl});
  });
}

ClauseList delete_object_clauses() {
  std::array<Condition<DeleteObject>, 2> conds{
      [](const SystemState& st, const DeleteObject& r) { return st.permits(r.object, r.subject, MatrixMode::ctrl); },
      [](const SystemState& st, const DeleteObject& r) { return !st.is_accessed(r.object); },
  };
  return ordered_clauses<DeleteObject>("deleteObject", conds, [](const SystemState& st, const DeleteObject& r) {
    return st.without_object_class(r.object).without_object_permissions(r.object);
  });
}

RuleTable make_table(Variant variant) {
  RuleTable table;
  table.clauses(RuleName::get_read) = get_read_clauses();
  table.clauses(RuleName::get_write) = get_write_clauses();
  table.clauses(RuleName::release_read) = release_read_clauses();
  table.clauses(RuleName::release_write) = release_write_clauses();
  table.clauses(RuleName::give_rw) = give_rw_clauses(variant);
  table.clauses(RuleName::rescind_read) = rescind_clauses<RescindRead, AccessMode::read>("rescindRead");
  table.clauses(RuleName::rescind_write) = rescind_clauses<RescindWrite, AccessMode::write>("rescindWrite");
  table.clauses(RuleName::change_class) = change_class_clauses();
  table.clauses(RuleName::create_object) = create_object_clauses();
  table.clauses(RuleName::delete_object) = delete_object_clauses();
  return table;
}

constexpr std::array<std::string_view, kRuleCount> kRuleNames{
    "getRead",     "getWrite",     "releaseRead", "releaseWrite", "giveRW",
    "rescindRead", "rescindWrite", "changeClass", "createObject", "deleteObject",
};

}  // namespace

std::string_view to_string(RuleName rule) { return kRuleNames[static_cast<std::size_t>(rule)]; }

std::optional<RuleName> parse_rule_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleCount; ++i)
    if (kRuleNames[i] == name) return static_cast<RuleName>(i);
  return std::nullopt;
}

UnknownRule::UnknownRule(std::string_view name)
    : std::invalid_argument("unknown rule name '" + std::string(name) + "'") {}

std::string_view to_string(Variant variant) { return variant == Variant::fixed ? "fixed" : "paperFaithful"; }

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "fixed") return Variant::fixed;
  if (name == "paperFaithful") return Variant::paper_faithful;
  return std::nullopt;
}

NoClauseApplies::NoClauseApplies(RuleName rule)
    : std::runtime_error("no clause of " + std::string(to_string(rule)) + " applies"), rule_(rule) {}

const RuleTable& RuleTable::standard(Variant variant) {
  static const RuleTable fixed = make_table(Variant::fixed);
  static const RuleTable faithful = make_table(Variant::paper_faithful);
  return variant == Variant::fixed ? fixed : faithful;
}

const RuleClause* RuleTable::select(const SystemState& st, const Request& request) const {
  for (const auto& clause : clauses(rule_of(request)))
    if (clause.guard(st, request)) return &clause;
  return nullptr;
}

Outcome RuleTable::apply(const SystemState& st, const Request& request) const {
  const auto* clause = select(st, request);
  if (clause == nullptr) throw NoClauseApplies(rule_of(request));
  return Outcome{clause->decision, clause->effect(st, request), clause->name};
}

const ClauseList& rule_clauses(RuleName rule, Variant variant) {
  return RuleTable::standard(variant).clauses(rule);
}

const ClauseList& rule_clauses(std::string_view rule, Variant variant) {
  auto parsed = parse_rule_name(rule);
  if (!parsed) throw UnknownRule(rule);
  return rule_clauses(*parsed, variant);
}

Outcome apply_rule(const SystemState& st, const Request& request) {
  return RuleTable::standard().apply(st, request);
}

Outcome get_read(const SystemState& st, SubjectId s, ObjectId o) { return apply_rule(st, GetRead{s, o}); }

Outcome get_write(const SystemState& st, SubjectId s, ObjectId o) { return apply_rule(st, GetWrite{s, o}); }

Outcome release_access(const SystemState& st, SubjectId s, ObjectId o, AccessMode mode) {
  if (mode == AccessMode::read) return apply_rule(st, ReleaseRead{s, o});
  return apply_rule(st, ReleaseWrite{s, o});
}

Outcome give_rw(const SystemState& st, SubjectId giver, SubjectId receiver, ObjectId o, MatrixMode mode) {
  return apply_rule(st, GiveRW{giver, receiver, o, mode});
}

Outcome rescind_access(const SystemState& st, SubjectId rescinder, SubjectId target, ObjectId o,
                       AccessMode mode) {
  if (mode == AccessMode::read) return apply_rule(st, RescindRead{rescinder, target, o});
  return apply_rule(st, RescindWrite{rescinder, target, o});
}

Outcome change_class(const SystemState& st, ObjectId o, const SecurityClass& cls) {
  return apply_rule(st, ChangeClass{o, cls});
}

Outcome create_object(const SystemState& st, SubjectId s, ObjectId o, const SecurityClass& cls) {
  return apply_rule(st, CreateObject{s, o, cls});
}

Outcome delete_object(const SystemState& st, SubjectId s, ObjectId o) {
  return apply_rule(st, DeleteObject{s, o});
}

}  // namespace blp
