#pragma once

// Random generator of grammatical scripts for round-trip tests.

#include <blp/scenario.hpp>

#include <random>

namespace script_gen {

using namespace blp;
using namespace blp::scenario;

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : gen_(seed) {}

  Script script() {
    Script out;
    bool have_command = false;
    const int n = 1 + static_cast<int>(below(12));
    out.statements.push_back(state_block());
    for (int i = 0; i < n; ++i) {
      switch (below(have_command ? 4 : 3)) {
        case 0: out.statements.push_back(state_block()); break;
        case 1:
          out.statements.push_back(Command{request()});
          have_command = true;
          break;
        case 2: {
          Assert a;
          for (std::size_t k = 0, m = 1 + below(3); k < m; ++k) a.predicates.push_back(static_cast<Predicate>(below(3)));
          out.statements.push_back(a);
          break;
        }
        default: out.statements.push_back(Expect{below(2) ? Decision::yes : Decision::no});
      }
    }
    return out;
  }

  StateBlock state_block() {
    StateBlock block;
    std::vector<SubjectId> subjects;
    std::vector<ObjectId> objects;
    for (std::size_t i = 0, n = below(4); i < n; ++i) {
      SubjectId s{"s" + std::to_string(i + 1)};
      subjects.push_back(s);
      block.decls.push_back(SubjectDecl{s, maybe_class()});
    }
    for (std::size_t i = 0, n = below(4); i < n; ++i) {
      ObjectId o{"obj_" + std::to_string(i + 1)};
      objects.push_back(o);
      block.decls.push_back(ObjectDecl{o, maybe_class()});
    }
    const auto declared = block.decls.size();
    if (!subjects.empty() && !objects.empty()) {
      for (std::size_t i = 0, n = below(5); i < n; ++i) {
        const auto s = pick(subjects);
        const auto o = pick(objects);
        switch (below(3)) {
          case 0: block.decls.push_back(GrantDecl{o, s, static_cast<MatrixMode>(below(3))}); break;
          case 1: block.decls.push_back(ReadingDecl{s, o}); break;
          default: block.decls.push_back(WritingDecl{s, o}); break;
        }
      }
    }
    // Declarations must precede their uses; only the relation lines move.
    if (below(2)) std::shuffle(block.decls.begin() + static_cast<std::ptrdiff_t>(declared), block.decls.end(), gen_);
    return block;
  }

  SecurityClass security_class() {
    static const char* const kCats[] = {"cia", "f14", "f15", "nato", "k1"};
    SecurityClass c{static_cast<std::uint32_t>(below(5)), {}};
    for (const char* name : kCats)
      if (below(3) == 0) c.cats.insert(CategoryId{name});
    return c;
  }

  Request request() {
    const SubjectId s{"s" + std::to_string(1 + below(4))};
    const SubjectId t{"s" + std::to_string(1 + below(4))};
    const ObjectId o{"obj_" + std::to_string(1 + below(4))};
    switch (below(10)) {
      case 0: return GetRead{s, o};
      case 1: return GetWrite{s, o};
      case 2: return ReleaseRead{s, o};
      case 3: return ReleaseWrite{s, o};
      case 4: return GiveRW{s, t, o, static_cast<MatrixMode>(below(3))};
      case 5: return RescindRead{s, t, o};
      case 6: return RescindWrite{s, t, o};
      case 7: return ChangeClass{o, security_class()};
      case 8: return CreateObject{s, o, security_class()};
      default: return DeleteObject{s, o};
    }
  }

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }

 private:
  std::optional<SecurityClass> maybe_class() {
    if (below(4) == 0) return std::nullopt;
    return security_class();
  }
  template <class T>
  T pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  std::mt19937_64 gen_;
};

}  // namespace script_gen
