#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace blp;
using namespace fixtures;

namespace {

std::vector<SecurityClass> small_lattice() {
  std::vector<SecurityClass> out;
  for (std::uint32_t level = 0; level < 3; ++level)
    for (unsigned mask = 0; mask < 4; ++mask) {
      SecurityClass c{level, {}};
      if (mask & 1) c.cats.insert(CategoryId{"a"});
      if (mask & 2) c.cats.insert(CategoryId{"b"});
      out.push_back(c);
    }
  return out;
}

// Literal readings of the quantified definitions, by linear search.
const SecurityClass* lookup_object(const SystemState& st, ObjectId o) {
  for (const auto& e : st.object_classes())
    if (e.id == o) return &e.cls;
  return nullptr;
}

const SecurityClass* lookup_subject(const SystemState& st, SubjectId s) {
  for (const auto& e : st.subject_classes())
    if (e.id == s) return &e.cls;
  return nullptr;
}

bool dominated(const SecurityClass& a, const SecurityClass& b) {
  if (a.level > b.level) return false;
  for (auto c : a.cats.members())
    if (!b.cats.contains(c)) return false;
  return true;
}

bool oracle_sec_cond(const SystemState& st) {
  for (const auto& r : st.reads()) {
    const auto* fs = lookup_subject(st, r.subject);
    const auto* fo = lookup_object(st, r.object);
    if (fs == nullptr || fo == nullptr || !dominated(*fo, *fs)) return false;
  }
  return true;
}

bool oracle_star_prop(const SystemState& st) {
  for (const auto& r : st.reads())
    for (const auto& w : st.writes()) {
      if (r.subject != w.subject) continue;
      const auto* read_cls = lookup_object(st, r.object);
      const auto* write_cls = lookup_object(st, w.object);
      if (read_cls == nullptr || write_cls == nullptr || !dominated(*read_cls, *write_cls)) return false;
    }
  return true;
}

// Arbitrary (possibly ill-formed, possibly partially classified) states.
SystemState random_state(std::mt19937_64& gen) {
  const std::array subjects{subj("s1"), subj("s2"), subj("s3")};
  const std::array objects{obj("o1"), obj("o2"), obj("o3")};
  const auto lattice = small_lattice();
  auto coin = [&](int percent) { return static_cast<int>(gen() % 100) < percent; };
  auto pick = [&](const auto& v) { return v[gen() % v.size()]; };

  StateBuilder b;
  for (auto s : subjects)
    if (coin(70)) b.subject(s, pick(lattice));
  for (auto o : objects)
    if (coin(70)) b.object(o, pick(lattice));
  for (int i = 0; i < 4; ++i)
    b.grant(pick(objects), pick(subjects), static_cast<MatrixMode>(gen() % 3));
  for (int i = 0, n = static_cast<int>(gen() % 4); i < n; ++i) b.reading(pick(subjects), pick(objects));
  for (int i = 0, n = static_cast<int>(gen() % 4); i < n; ++i) b.writing(pick(subjects), pick(objects));
  return b.build_unchecked();
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("class_leq examples") {
    CHECK(class_leq(cls(1, {"f14"}), cls(2, {"f14", "f15"})));
    CHECK_FALSE(class_leq(cls(2, {"f14", "f15"}), cls(1, {"f14"})));
    CHECK(class_leq(cls(3, {"cia"}), cls(3, {"cia"})));
    CHECK_FALSE(class_leq(cls(1, {"cia"}), cls(2, {"f14"})));
  }

  TEST_CASE("class_leq is a partial order") {
    const auto lattice = small_lattice();
    for (const auto& a : lattice) {
      CHECK(class_leq(a, a));
      for (const auto& b : lattice) {
        if (class_leq(a, b) && class_leq(b, a)) CHECK(a == b);
        for (const auto& c : lattice)
          if (class_leq(a, b) && class_leq(b, c)) CHECK(class_leq(a, c));
      }
    }
  }

  TEST_CASE("sec_cond examples") {
    CHECK(sec_cond(SystemState{}));
    CHECK(sec_cond(ss1()));
    CHECK_FALSE(sec_cond(with_reads(ss1(), {acc("s1", "o2")})));
    CHECK(sec_cond(with_reads(ss1(), {acc("s2", "o1"), acc("s2", "o2")})));
    // Unclassified subject or object fails rather than passing vacuously.
    CHECK_FALSE(sec_cond(with_reads(ss1(), {acc("s3", "o1")})));
    CHECK_FALSE(sec_cond(with_reads(ss1(), {acc("s1", "o9")})));
  }

  TEST_CASE("star_prop examples") {
    CHECK(star_prop(SystemState{}));
    CHECK(star_prop(with_reads(ss1(), {acc("s2", "o2")})));
    CHECK(star_prop(with_writes(with_reads(ss1(), {acc("s2", "o2")}), {acc("s2", "o2")})));
    CHECK_FALSE(star_prop(with_writes(with_reads(ss1(), {acc("s2", "o2")}), {acc("s2", "o1")})));
    CHECK(star_prop(with_writes(with_reads(ss1(), {acc("s2", "o1")}), {acc("s2", "o2")})));
    // Different subjects never constrain each other.
    CHECK(star_prop(with_writes(with_reads(ss1(), {acc("s1", "o2")}), {acc("s2", "o1")})));
  }

  TEST_CASE("strict_star_prop examples") {
    const auto unclassified_read = with_reads(SystemState{}, {acc("s1", "o9")});
    CHECK(strict_star_prop(unclassified_read));
    CHECK(star_prop(unclassified_read));

    const auto with_write = with_writes(with_reads(ss1(), {acc("s1", "o9")}), {acc("s2", "o1")});
    CHECK_FALSE(strict_star_prop(with_write));
    CHECK(star_prop(with_write));

    CHECK_FALSE(strict_star_prop(with_writes(SystemState{}, {acc("s1", "o9")})));
  }

  TEST_CASE("well_formed examples") {
    CHECK(well_formed(SystemState{}));
    CHECK(well_formed(ss1()));

    const auto dangling_read = with_reads(ss1(), {acc("s1", "o9")});
    CHECK_FALSE(well_formed(dangling_read));
    CHECK(first_type_violation(dangling_read) == TypeInvariant::reads_in_matrix);

    const auto dangling_write = with_writes(ss1(), {acc("s1", "o9")});
    CHECK(first_type_violation(dangling_write) == TypeInvariant::writes_in_matrix);

    const auto two_object_classes = StateBuilder().object(obj("o1"), cls(1)).object(obj("o1"), cls(2)).build_unchecked();
    CHECK_FALSE(fo_functional(two_object_classes));
    CHECK(first_type_violation(two_object_classes) == TypeInvariant::fo_functional);

    const auto two_subject_classes =
        StateBuilder().subject(subj("s1"), cls(1)).subject(subj("s1"), cls(2)).build_unchecked();
    CHECK(first_type_violation(two_subject_classes) == TypeInvariant::fs_functional);

    CHECK_THROWS_AS(StateBuilder().object(obj("o1"), cls(1)).object(obj("o1"), cls(2)).build(),
                    std::invalid_argument);
    CHECK(first_type_violation(ss1()) == std::nullopt);
  }

  TEST_CASE("predicates agree with a brute-force oracle") {
    std::mt19937_64 gen(20240611);
    for (int i = 0; i < 5000; ++i) {
      const auto st = random_state(gen);
      CHECK(sec_cond(st) == oracle_sec_cond(st));
      CHECK(star_prop(st) == oracle_star_prop(st));
    }
  }

  TEST_CASE("star_prop survives shrinking the current accesses") {
    std::mt19937_64 gen(7);
    int exercised = 0;
    for (int i = 0; i < 3000; ++i) {
      const auto st = random_state(gen);
      if (!star_prop(st)) continue;
      ++exercised;
      for (const auto& a : st.reads()) CHECK(star_prop(st.without_read(a)));
      for (const auto& a : st.writes()) CHECK(star_prop(st.without_write(a)));
    }
    CHECK(exercised > 100);
  }

  TEST_CASE("predicates are pure") {
    std::mt19937_64 gen(99);
    for (int i = 0; i < 200; ++i) {
      const auto st = random_state(gen);
      const auto copy = st;
      const bool first[] = {sec_cond(st), star_prop(st), strict_star_prop(st), well_formed(st)};
      const bool second[] = {sec_cond(st), star_prop(st), strict_star_prop(st), well_formed(st)};
      CHECK(std::equal(std::begin(first), std::end(first), std::begin(second)));
      CHECK(st == copy);
    }
  }

  TEST_CASE("state equality is structural") {
    const auto a = with_reads(ss1(), {acc("s2", "o2"), acc("s2", "o1")});
    const auto b = with_reads(ss1(), {acc("s2", "o1"), acc("s2", "o2")});
    CHECK(a == b);
    CHECK(a.without_read(acc("s2", "o1")).without_read(acc("s2", "o2")) == ss1());
  }

  TEST_CASE("identifiers order by first use") {
    const SubjectId first{"order-probe-a"};
    const SubjectId second{"order-probe-b"};
    CHECK(first < second);
    CHECK(SubjectId{"order-probe-a"} == first);
    CHECK(first.name() == "order-probe-a");
  }
}
