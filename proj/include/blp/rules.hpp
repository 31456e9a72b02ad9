#pragma once

// The ten transition rules. Each rule is an ordered list of guarded clauses:
// one normal clause (decision yes) followed by abnormal clauses (decision no,
// identity effect). The first clause whose guard holds fires.

#include <blp/state.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace blp {

enum class RuleName : std::uint8_t {
  get_read,
  get_write,
  release_read,
  release_write,
  give_rw,
  rescind_read,
  rescind_write,
  change_class,
  create_object,
  delete_object,
};

inline constexpr std::size_t kRuleCount = 10;

inline constexpr std::array<RuleName, kRuleCount> kAllRules{
    RuleName::get_read,     RuleName::get_write,     RuleName::release_read, RuleName::release_write,
    RuleName::give_rw,      RuleName::rescind_read,  RuleName::rescind_write, RuleName::change_class,
    RuleName::create_object, RuleName::delete_object,
};

/// camelCase rule name as used on the command line and in reports.
std::string_view to_string(RuleName rule);
std::optional<RuleName> parse_rule_name(std::string_view name);

class UnknownRule : public std::invalid_argument {
 public:
  explicit UnknownRule(std::string_view name);
};

struct GetRead {
  SubjectId subject;
  ObjectId object;
  friend auto operator<=>(const GetRead&, const GetRead&) = default;
};
struct GetWrite {
  SubjectId subject;
  ObjectId object;
  friend auto operator<=>(const GetWrite&, const GetWrite&) = default;
};
struct ReleaseRead {
  SubjectId subject;
  ObjectId object;
  friend auto operator<=>(const ReleaseRead&, const ReleaseRead&) = default;
};
struct ReleaseWrite {
  SubjectId subject;
  ObjectId object;
  friend auto operator<=>(const ReleaseWrite&, const ReleaseWrite&) = default;
};
struct GiveRW {
  SubjectId giver;
  SubjectId receiver;
  ObjectId object;
  MatrixMode mode;
  friend auto operator<=>(const GiveRW&, const GiveRW&) = default;
};
struct RescindRead {
  SubjectId rescinder;
  SubjectId target;
  ObjectId object;
  friend auto operator<=>(const RescindRead&, const RescindRead&) = default;
};
struct RescindWrite {
  SubjectId rescinder;
  SubjectId target;
  ObjectId object;
  friend auto operator<=>(const RescindWrite&, const RescindWrite&) = default;
};
struct ChangeClass {
  ObjectId object;
  SecurityClass cls;
  friend bool operator==(const ChangeClass&, const ChangeClass&) = default;
};
struct CreateObject {
  SubjectId subject;
  ObjectId object;
  SecurityClass cls;
  friend bool operator==(const CreateObject&, const CreateObject&) = default;
};
struct DeleteObject {
  SubjectId subject;
  ObjectId object;
  friend auto operator<=>(const DeleteObject&, const DeleteObject&) = default;
};

/// One alternative per rule, in RuleName order: `request.index()` is the rule.
using Request = std::variant<GetRead, GetWrite, ReleaseRead, ReleaseWrite, GiveRW, RescindRead,
                             RescindWrite, ChangeClass, CreateObject, DeleteObject>;

static_assert(std::variant_size_v<Request> == kRuleCount);

inline RuleName rule_of(const Request& request) { return static_cast<RuleName>(request.index()); }

using Guard = std::function<bool(const SystemState&, const Request&)>;
using Effect = std::function<SystemState(const SystemState&, const Request&)>;

struct RuleClause {
  std::string name;
  Guard guard;
  Effect effect;
  Decision decision;
};

using ClauseList = std::vector<RuleClause>;

struct Outcome {
  Decision decision;
  SystemState after;
  std::string clause;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// `fixed` closes the giveRW case split with a fourth abnormal clause;
/// `paper_faithful` omits it and leaves that input region uncovered.
enum class Variant : std::uint8_t { fixed, paper_faithful };

std::string_view to_string(Variant variant);
std::optional<Variant> parse_variant(std::string_view name);

/// Raised when no clause of a rule applies (only reachable with an
/// incomplete clause table).
class NoClauseApplies : public std::runtime_error {
 public:
  explicit NoClauseApplies(RuleName rule);
  RuleName rule() const { return rule_; }

 private:
  RuleName rule_;
};

/// Clause lists for all ten rules. Copyable, so tests can derive mutated
/// tables from a standard one.
class RuleTable {
 public:
  static const RuleTable& standard(Variant variant = Variant::fixed);

  const ClauseList& clauses(RuleName rule) const { return clauses_[static_cast<std::size_t>(rule)]; }
  ClauseList& clauses(RuleName rule) { return clauses_[static_cast<std::size_t>(rule)]; }

  /// First clause of the request's rule whose guard holds, or nullptr.
  const RuleClause* select(const SystemState& st, const Request& request) const;

  /// Throws NoClauseApplies if no guard holds.
  Outcome apply(const SystemState& st, const Request& request) const;

 private:
  std::array<ClauseList, kRuleCount> clauses_;
};

const ClauseList& rule_clauses(RuleName rule, Variant variant);
/// Throws UnknownRule for a name that is not one of the ten rules.
const ClauseList& rule_clauses(std::string_view rule, Variant variant);

/// Dispatches to the rule named by the request (fixed variant). Total.
Outcome apply_rule(const SystemState& st, const Request& request);

Outcome get_read(const SystemState& st, SubjectId s, ObjectId o);
Outcome get_write(const SystemState& st, SubjectId s, ObjectId o);
Outcome release_access(const SystemState& st, SubjectId s, ObjectId o, AccessMode mode);
Outcome give_rw(const SystemState& st, SubjectId giver, SubjectId receiver, ObjectId o, MatrixMode mode);
Outcome rescind_access(const SystemState& st, SubjectId rescinder, SubjectId target, ObjectId o,
                       AccessMode mode);
Outcome change_class(const SystemState& st, ObjectId o, const SecurityClass& cls);
Outcome create_object(const SystemState& st, SubjectId s, ObjectId o, const SecurityClass& cls);
Outcome delete_object(const SystemState& st, SubjectId s, ObjectId o);

}  // namespace blp
