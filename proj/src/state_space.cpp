#include <blp/checker.hpp>

#include <map>
#include <stdexcept>
#include <string>

namespace blp {
namespace {

// All index combinations of {0..n-1} with size <= cap, size-major then
// lexicographic.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t cap) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  for (std::size_t k = 0; k <= std::min(n, cap); ++k) {
    current.clear();
    std::function<void(std::size_t)> extend = [&](std::size_t start) {
      if (current.size() == k) {
        out.push_back(current);
        return;
      }
      for (std::size_t i = start; i + (k - current.size()) <= n; ++i) {
        current.push_back(i);
        extend(i + 1);
        current.pop_back();
      }
    };
    extend(0);
  }
  return out;
}

// Every partial function ids -> classes, first id most significant.
template <class Key>
std::vector<ClassTable<Key>> partial_functions(const std::vector<Key>& ids,
                                               const std::vector<SecurityClass>& classes) {
  std::vector<ClassTable<Key>> out;
  std::vector<std::size_t> digit(ids.size(), 0);  // 0 = unclassified
  const std::size_t base = classes.size() + 1;
  while (true) {
    ClassTable<Key> table;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (digit[i] != 0) table.assign(ids[i], classes[digit[i] - 1]);
    out.push_back(std::move(table));
    std::size_t pos = ids.size();
    while (pos > 0) {
      --pos;
      if (++digit[pos] < base) break;
      digit[pos] = 0;
      if (pos == 0) return out;
    }
    if (ids.empty()) return out;
  }
}

std::uint64_t draw_below(const std::function<std::uint64_t()>& next, std::uint64_t n) {
  // Rejection sampling keeps the draw uniform and platform independent.
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    std::uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

}  // namespace

StateSpace::StateSpace(const Bounds& bounds) : bounds_(bounds) {
  if (bounds.objects > 64) throw std::invalid_argument("at most 64 objects are supported");
  if (bounds.categories > 16) throw std::invalid_argument("at most 16 categories are supported");

  for (std::uint32_t i = 1; i <= bounds.subjects; ++i) subjects_.emplace_back("s" + std::to_string(i));
  for (std::uint32_t i = 1; i <= bounds.objects; ++i) objects_.emplace_back("o" + std::to_string(i));
  std::vector<CategoryId> categories;
  for (std::uint32_t i = 1; i <= bounds.categories; ++i) categories.emplace_back("k" + std::to_string(i));

  for (std::uint32_t level = 0; level < bounds.levels; ++level) {
    for (std::uint32_t mask = 0; mask < (1u << bounds.categories); ++mask) {
      SecurityClass cls{level, {}};
      for (std::uint32_t c = 0; c < bounds.categories; ++c)
        if (mask & (1u << c)) cls.cats.insert(categories[c]);
      classes_.push_back(cls);
    }
  }

  fs_options_ = partial_functions(subjects_, classes_);
  fo_options_ = partial_functions(objects_, classes_);

  std::vector<Permission> triples;
  for (auto o : objects_)
    for (auto s : subjects_)
      for (auto mode : {MatrixMode::read, MatrixMode::write, MatrixMode::ctrl}) triples.push_back({o, s, mode});

  // One br list and one bw list per distinct dom m.
  std::map<std::pair<std::uint64_t, bool>, std::uint32_t> list_for_domain;
  auto access_list = [&](std::uint64_t domain, bool writes) {
    auto key = std::make_pair(domain, writes);
    if (auto it = list_for_domain.find(key); it != list_for_domain.end()) return it->second;
    std::vector<Access> pairs;
    for (auto s : subjects_)
      for (std::size_t j = 0; j < objects_.size(); ++j)
        if (domain & (std::uint64_t{1} << j)) pairs.push_back({s, objects_[j]});
    std::vector<AccessRelation> options;
    for (const auto& combo : combinations(pairs.size(), writes ? bounds_.max_writes : bounds_.max_reads)) {
      AccessRelation rel;
      for (auto i : combo) rel.insert(pairs[i]);
      options.push_back(std::move(rel));
    }
    auto index = static_cast<std::uint32_t>(access_lists_.size());
    access_lists_.push_back(std::move(options));
    list_for_domain.emplace(key, index);
    return index;
  };

  for (const auto& combo : combinations(triples.size(), bounds.max_matrix)) {
    AccessMatrix m;
    std::uint64_t domain = 0;
    for (auto i : combo) {
      m.insert(triples[i]);
      domain |= std::uint64_t{1} << (i / (3 * subjects_.size()));
    }
    matrix_options_.push_back(std::move(m));
    read_list_.push_back(access_list(domain, false));
    write_list_.push_back(access_list(domain, true));
  }
}

std::uint64_t StateSpace::size() const {
  std::uint64_t per_prefix = 0;
  for (std::size_t m = 0; m < matrix_options_.size(); ++m)
    per_prefix += read_options(m).size() * write_options(m).size();
  return per_prefix * prefix_count();
}

void StateSpace::visit(std::uint64_t first, std::uint64_t last,
                       const std::function<bool(const SystemState&, const StateCode&)>& visitor) const {
  const std::uint64_t fo_count = fo_options_.size();
  for (std::uint64_t prefix = first; prefix < last && prefix < prefix_count(); ++prefix) {
    StateCode code;
    code.fs = prefix / fo_count;
    code.fo = prefix % fo_count;
    const auto& fs = fs_options_[code.fs];
    const auto& fo = fo_options_[code.fo];
    for (code.matrix = 0; code.matrix < matrix_options_.size(); ++code.matrix) {
      const auto& m = matrix_options_[code.matrix];
      const auto& reads = read_options(code.matrix);
      const auto& writes = write_options(code.matrix);
      for (code.reads = 0; code.reads < reads.size(); ++code.reads) {
        for (code.writes = 0; code.writes < writes.size(); ++code.writes) {
          SystemState st(reads[code.reads], writes[code.writes], fo, fs, m);
          if (!visitor(st, code)) return;
        }
      }
    }
  }
}

void StateSpace::visit_groups(
    std::uint64_t first, std::uint64_t last,
    const std::function<bool(std::span<const SystemState>, const StateCode&)>& visitor) const {
  const std::uint64_t fo_count = fo_options_.size();
  std::vector<SystemState> group;
  for (std::uint64_t prefix = first; prefix < last && prefix < prefix_count(); ++prefix) {
    StateCode code;
    code.fs = prefix / fo_count;
    code.fo = prefix % fo_count;
    const auto& fs = fs_options_[code.fs];
    const auto& fo = fo_options_[code.fo];
    for (code.matrix = 0; code.matrix < matrix_options_.size(); ++code.matrix) {
      const auto& m = matrix_options_[code.matrix];
      group.clear();
      for (const auto& reads : read_options(code.matrix))
        for (const auto& writes : write_options(code.matrix)) group.emplace_back(reads, writes, fo, fs, m);
      if (!visitor(group, code)) return;
    }
  }
}

SystemState StateSpace::decode(const StateCode& code) const {
  if (code.fs >= fs_options_.size() || code.fo >= fo_options_.size() || code.matrix >= matrix_options_.size() ||
      code.reads >= read_options(code.matrix).size() || code.writes >= write_options(code.matrix).size())
    throw std::out_of_range("state code outside the bounded space");
  return SystemState(read_options(code.matrix)[code.reads], write_options(code.matrix)[code.writes],
                     fo_options_[code.fo], fs_options_[code.fs], matrix_options_[code.matrix]);
}

SystemState StateSpace::sample(const std::function<std::uint64_t()>& next, StateCode* code) const {
  StateCode c;
  c.fs = draw_below(next, fs_options_.size());
  c.fo = draw_below(next, fo_options_.size());
  c.matrix = draw_below(next, matrix_options_.size());
  c.reads = draw_below(next, read_options(c.matrix).size());
  c.writes = draw_below(next, write_options(c.matrix).size());
  if (code != nullptr) *code = c;
  return decode(c);
}

StateEnumerator::StateEnumerator(const Bounds& bounds) : space_(bounds) {}

std::optional<SystemState> StateEnumerator::next() {
  if (done_) return std::nullopt;
  auto result = space_.decode(cursor_);
  // Advance the odometer: bw, br, m, fo, fs.
  auto& c = cursor_;
  if (++c.writes < space_.write_options(c.matrix).size()) return result;
  c.writes = 0;
  if (++c.reads < space_.read_options(c.matrix).size()) return result;
  c.reads = 0;
  if (++c.matrix < space_.matrix_options_.size()) return result;
  c.matrix = 0;
  if (++c.fo < space_.fo_options_.size()) return result;
  c.fo = 0;
  if (++c.fs < space_.fs_options_.size()) return result;
  done_ = true;
  return result;
}

std::vector<Request> enumerate_requests(const Bounds& bounds, RuleName rule) {
  StateSpace space(Bounds{bounds.subjects, bounds.objects, bounds.levels, bounds.categories, 0, 0, 0});
  const auto& subjects = space.subjects();
  const auto& objects = space.objects();
  const auto& classes = space.classes();
  std::vector<Request> out;
  auto subject_object = [&](auto make) {
    for (auto s : subjects)
      for (auto o : objects) out.push_back(make(s, o));
  };
  auto subject_subject_object = [&](auto make) {
    for (auto a : subjects)
      for (auto b : subjects)
        for (auto o : objects) out.push_back(make(a, b, o));
  };
  switch (rule) {
    case RuleName::get_read: subject_object([](auto s, auto o) { return GetRead{s, o}; }); break;
    case RuleName::get_write: subject_object([](auto s, auto o) { return GetWrite{s, o}; }); break;
    case RuleName::release_read: subject_object([](auto s, auto o) { return ReleaseRead{s, o}; }); break;
    case RuleName::release_write: subject_object([](auto s, auto o) { return ReleaseWrite{s, o}; }); break;
    case RuleName::give_rw:
      for (auto g : subjects)
        for (auto r : subjects)
          for (auto o : objects)
            for (auto x : {MatrixMode::read, MatrixMode::write, MatrixMode::ctrl}) out.push_back(GiveRW{g, r, o, x});
      break;
    case RuleName::rescind_read:
      subject_subject_object([](auto a, auto b, auto o) { return RescindRead{a, b, o}; });
      break;
    case RuleName::rescind_write:
      subject_subject_object([](auto a, auto b, auto o) { return RescindWrite{a, b, o}; });
      break;
    case RuleName::change_class:
      for (auto o : objects)
        for (const auto& k : classes) out.push_back(ChangeClass{o, k});
      break;
    case RuleName::create_object:
      for (auto s : subjects)
        for (auto o : objects)
          for (const auto& k : classes) out.push_back(CreateObject{s, o, k});
      break;
    case RuleName::delete_object: subject_object([](auto s, auto o) { return DeleteObject{s, o}; }); break;
  }
  return out;
}

std::vector<Request> enumerate_requests(const Bounds& bounds) {
  std::vector<Request> out;
  for (auto rule : kAllRules) {
    auto part = enumerate_requests(bounds, rule);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace blp
