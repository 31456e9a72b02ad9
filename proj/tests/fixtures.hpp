#pragma once

#include <blp/checker.hpp>
#include <blp/rules.hpp>
#include <blp/state.hpp>

#include <string_view>

namespace fixtures {

using namespace blp;

inline SubjectId subj(std::string_view name) { return SubjectId{name}; }
inline ObjectId obj(std::string_view name) { return ObjectId{name}; }

inline SecurityClass cls(std::uint32_t level, std::initializer_list<std::string_view> cats = {}) {
  SecurityClass c{level, {}};
  for (auto n : cats) c.cats.insert(CategoryId{n});
  return c;
}

// The simulation state used throughout: two subjects, two objects, four
// matrix entries, no current accesses.
inline SystemState ss1() {
  return StateBuilder()
      .subject(subj("s1"), cls(1, {"cia"}))
      .subject(subj("s2"), cls(2, {"f14", "cia", "f15"}))
      .object(obj("o1"), cls(1, {"f14"}))
      .object(obj("o2"), cls(2, {"f14", "f15"}))
      .grant(obj("o1"), subj("s1"), MatrixMode::read)
      .grant(obj("o1"), subj("s2"), MatrixMode::write)
      .grant(obj("o2"), subj("s2"), MatrixMode::read)
      .grant(obj("o2"), subj("s2"), MatrixMode::write)
      .build();
}

// ss1's classes with only the giveRW matrix entries.
inline SystemState a_state() {
  return StateBuilder()
      .subject(subj("s1"), cls(1, {"cia"}))
      .subject(subj("s2"), cls(2, {"f14", "cia", "f15"}))
      .object(obj("o1"), cls(1, {"f14"}))
      .object(obj("o2"), cls(2, {"f14", "f15"}))
      .grant(obj("o1"), subj("s1"), MatrixMode::read)
      .grant(obj("o1"), subj("s1"), MatrixMode::ctrl)
      .grant(obj("o1"), subj("s2"), MatrixMode::read)
      .build();
}

inline SystemState with_reads(SystemState st, std::initializer_list<Access> reads) {
  for (auto a : reads) st = st.with_read(a);
  return st;
}

inline SystemState with_writes(SystemState st, std::initializer_list<Access> writes) {
  for (auto a : writes) st = st.with_write(a);
  return st;
}

inline Access acc(std::string_view s, std::string_view o) { return Access{subj(s), obj(o)}; }

}  // namespace fixtures
