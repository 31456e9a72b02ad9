#pragma once

// Bounded-exhaustive and seeded-random checking of the invariance obligations
// (10 rules x 6 properties), plus clause-partition analysis.
//
// This is small-scope evidence: every state and request inside the bounds is
// visited, but nothing is claimed beyond them.

#include <blp/rules.hpp>
#include <blp/state.hpp>

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace blp {

/// Universes are s1..sN, o1..oN, levels 0..L-1 and categories k1..kC; the
/// caps limit |br|, |bw| and |m|.
struct Bounds {
  std::uint32_t subjects = 2;
  std::uint32_t objects = 2;
  std::uint32_t levels = 2;
  std::uint32_t categories = 1;
  std::uint32_t max_reads = 2;
  std::uint32_t max_writes = 2;
  std::uint32_t max_matrix = 3;

  /// Default desk-scale profile P0.
  static constexpr Bounds p0() { return Bounds{}; }

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Position of a state in the canonical enumeration: indices into the fs, fo,
/// m, br and bw option lists. Lexicographic order on this tuple is the
/// enumeration order.
struct StateCode {
  std::uint64_t fs = 0, fo = 0, matrix = 0, reads = 0, writes = 0;
  friend auto operator<=>(const StateCode&, const StateCode&) = default;
};

/// The bounded state space. Type invariants hold by construction: classes
/// are chosen per identifier, and br/bw only range over objects in dom m.
class StateSpace {
 public:
  explicit StateSpace(const Bounds& bounds);

  const Bounds& bounds() const { return bounds_; }
  const std::vector<SubjectId>& subjects() const { return subjects_; }
  const std::vector<ObjectId>& objects() const { return objects_; }
  /// Every representable class, level-major then category subset.
  const std::vector<SecurityClass>& classes() const { return classes_; }

  /// Number of (fs, fo) prefixes; the unit of work splitting.
  std::uint64_t prefix_count() const { return fs_options_.size() * fo_options_.size(); }
  std::uint64_t size() const;

  /// Visits states whose (fs, fo) prefix index lies in [first, last), in
  /// canonical order. The visitor returns false to stop early.
  void visit(std::uint64_t first, std::uint64_t last,
             const std::function<bool(const SystemState&, const StateCode&)>& visitor) const;
  void visit(const std::function<bool(const SystemState&, const StateCode&)>& visitor) const {
    visit(0, prefix_count(), visitor);
  }

  /// Same order as visit, delivered in groups that share (fs, fo, m). The
  /// group code has reads = writes = 0.
  void visit_groups(std::uint64_t first, std::uint64_t last,
                    const std::function<bool(std::span<const SystemState>, const StateCode&)>& visitor) const;

  SystemState decode(const StateCode& code) const;

  /// Uniform choice per component; `next` yields raw 64-bit random words.
  SystemState sample(const std::function<std::uint64_t()>& next, StateCode* code = nullptr) const;

 private:
  friend class StateEnumerator;

  const std::vector<AccessRelation>& read_options(std::uint64_t matrix) const {
    return access_lists_[read_list_[matrix]];
  }
  const std::vector<AccessRelation>& write_options(std::uint64_t matrix) const {
    return access_lists_[write_list_[matrix]];
  }

  Bounds bounds_;
  std::vector<SubjectId> subjects_;
  std::vector<ObjectId> objects_;
  std::vector<SecurityClass> classes_;
  std::vector<ClassTable<SubjectId>> fs_options_;
  std::vector<ClassTable<ObjectId>> fo_options_;
  std::vector<AccessMatrix> matrix_options_;
  // br/bw option lists depend only on dom m; shared between matrix options.
  std::vector<std::vector<AccessRelation>> access_lists_;
  std::vector<std::uint32_t> read_list_;
  std::vector<std::uint32_t> write_list_;
};

/// Pull-style enumerator over a StateSpace, in canonical order.
class StateEnumerator {
 public:
  explicit StateEnumerator(const Bounds& bounds);
  /// Next state, or nullopt when exhausted.
  std::optional<SystemState> next();
  const StateSpace& space() const { return space_; }

 private:
  StateSpace space_;
  StateCode cursor_;
  bool done_ = false;
};

/// Every request over the bounded universes, rule by rule in RuleName order.
std::vector<Request> enumerate_requests(const Bounds& bounds);
std::vector<Request> enumerate_requests(const Bounds& bounds, RuleName rule);

enum class Property : std::uint8_t {
  sec_cond,
  star_prop,
  fo_functional,
  fs_functional,
  reads_in_matrix,
  writes_in_matrix,
};

inline constexpr std::array<Property, 6> kAllProperties{
    Property::sec_cond,        Property::star_prop,       Property::fo_functional,
    Property::fs_functional,   Property::reads_in_matrix, Property::writes_in_matrix,
};

std::string_view to_string(Property property);
std::optional<Property> parse_property(std::string_view name);

/// Evaluates a property; `strict` swaps star_prop for strict_star_prop.
bool holds(Property property, const SystemState& st, bool strict = false);

/// The hypothesis of an obligation: well-formedness, plus the property itself
/// for the two security properties.
bool hypothesis_holds(Property property, const SystemState& st, bool strict = false);

struct Obligation {
  RuleName rule;
  Property property;
  friend bool operator==(const Obligation&, const Obligation&) = default;
};

struct Counterexample {
  SystemState before;
  Request request;
  SystemState after;
  Decision decision;
  std::string clause;
  Property violated;
};

struct ObligationResult {
  Obligation obligation;
  bool pass = true;
  std::uint64_t states_checked = 0;    // states satisfying the hypothesis
  std::uint64_t requests_checked = 0;  // (state, request) pairs evaluated
  std::optional<Counterexample> counterexample;
  std::chrono::nanoseconds elapsed{0};  // shared by the six obligations of a rule
};

struct ObligationReport {
  std::vector<ObligationResult> results;
  bool all_pass() const;
};

struct Exhaustive {};
struct RandomSampling {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
};
using CheckMode = std::variant<Exhaustive, RandomSampling>;

struct CheckOptions {
  Bounds bounds = Bounds::p0();
  CheckMode mode = Exhaustive{};
  std::optional<RuleName> rule;
  std::optional<Property> property;
  bool strict_star_prop = false;
  unsigned workers = 1;
  /// Clause table to check; null means the standard fixed table.
  const RuleTable* table = nullptr;
};

/// Throws std::invalid_argument for random mode with zero samples, and
/// std::runtime_error naming the pair if a rule cannot be evaluated.
ObligationReport check_obligations(const CheckOptions& options);

/// Re-evaluates a counterexample: hypothesis holds before, the table yields
/// the recorded outcome, and the property fails after.
bool reproduces(const Counterexample& cex, const RuleTable& table, bool strict = false);

struct PartitionWitness {
  SystemState state;
  Request request;
  std::vector<std::string> matched;  // clause names whose guard holds
};

struct PartitionReport {
  RuleName rule;
  Variant variant;
  std::uint64_t states_checked = 0;
  std::uint64_t requests_checked = 0;
  std::uint64_t gap_count = 0;
  std::uint64_t overlap_count = 0;
  // Per request (in enumeration order), the first witnesses in canonical
  // state order.
  std::vector<PartitionWitness> gaps;
  std::vector<PartitionWitness> overlaps;
  bool clean() const { return gap_count == 0 && overlap_count == 0; }
};

struct PartitionOptions {
  std::size_t max_witnesses = 1;  // per distinct request; 0 keeps every witness
  unsigned workers = 1;
  const RuleTable* table = nullptr;  // overrides the standard table for the variant
};

PartitionReport check_partition(RuleName rule, Variant variant, const Bounds& bounds,
                                const PartitionOptions& options = {});

/// Clause names of `clauses` whose guard holds on (st, request).
std::vector<std::string> matching_clauses(const ClauseList& clauses, const SystemState& st,
                                          const Request& request);

}  // namespace blp
