#pragma once

// Security classes, the five-component system state and the invariant
// predicates evaluated over it.

#include <blp/symbols.hpp>

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace blp {

/// Set of categories, stored as a bitmap over category intern indices.
class CategorySet {
 public:
  CategorySet() = default;
  CategorySet(std::initializer_list<CategoryId> ids) {
    for (auto id : ids) insert(id);
  }
  explicit CategorySet(std::initializer_list<std::string_view> names) {
    for (auto n : names) insert(CategoryId{n});
  }

  void insert(CategoryId id) { bits_.set(id.index()); }
  bool contains(CategoryId id) const { return id.index() < kMaxCategories && bits_.test(id.index()); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }

  bool is_subset_of(const CategorySet& other) const { return (bits_ & ~other.bits_).none(); }

  /// Members in intern order.
  std::vector<CategoryId> members() const;

  friend bool operator==(const CategorySet&, const CategorySet&) = default;
  friend bool operator<(const CategorySet& a, const CategorySet& b);

 private:
  std::bitset<kMaxCategories> bits_;
};

/// A (level, category set) pair; higher level = more secret.
struct SecurityClass {
  std::uint32_t level = 0;
  CategorySet cats;

  friend bool operator==(const SecurityClass&, const SecurityClass&) = default;
  friend bool operator<(const SecurityClass& a, const SecurityClass& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.cats < b.cats;
  }
};

/// True iff `b` dominates `a`: a.cats ⊆ b.cats and a.level ≤ b.level.
inline bool class_leq(const SecurityClass& a, const SecurityClass& b) {
  return a.level <= b.level && a.cats.is_subset_of(b.cats);
}

enum class MatrixMode : std::uint8_t { read, write, ctrl };
enum class AccessMode : std::uint8_t { read, write };
enum class Decision : std::uint8_t { yes, no };

std::string_view to_string(MatrixMode mode);
std::string_view to_string(AccessMode mode);
std::string_view to_string(Decision decision);

inline MatrixMode to_matrix_mode(AccessMode mode) {
  return mode == AccessMode::read ? MatrixMode::read : MatrixMode::write;
}

/// A current access (subject, object).
struct Access {
  SubjectId subject;
  ObjectId object;
  friend auto operator<=>(const Access&, const Access&) = default;
};

/// An access-matrix entry (object, subject, mode).
struct Permission {
  ObjectId object;
  SubjectId subject;
  MatrixMode mode;
  friend auto operator<=>(const Permission&, const Permission&) = default;
};

template <class Key>
struct Classification {
  Key id;
  SecurityClass cls;
  friend bool operator==(const Classification&, const Classification&) = default;
  friend bool operator<(const Classification& a, const Classification& b) {
    if (a.id != b.id) return a.id < b.id;
    return a.cls < b.cls;
  }
};

/// Sorted, duplicate-free small collection. Equality is structural.
template <class T, std::size_t N = 4>
class SortedSet {
 public:
  using storage_type = boost::container::small_vector<T, N>;
  using const_iterator = typename storage_type::const_iterator;

  SortedSet() = default;
  SortedSet(std::initializer_list<T> items) : items_(items) { normalize(); }
  template <class It>
  SortedSet(It first, It last) : items_(first, last) {
    normalize();
  }

  bool insert(const T& item) {
    auto it = std::lower_bound(items_.begin(), items_.end(), item);
    if (it != items_.end() && !(item < *it)) return false;
    items_.insert(it, item);
    return true;
  }
  bool erase(const T& item) {
    auto it = std::lower_bound(items_.begin(), items_.end(), item);
    if (it == items_.end() || item < *it) return false;
    items_.erase(it);
    return true;
  }
  template <class Pred>
  std::size_t erase_if(Pred pred) {
    auto it = std::remove_if(items_.begin(), items_.end(), pred);
    auto n = static_cast<std::size_t>(items_.end() - it);
    items_.erase(it, items_.end());
    return n;
  }
  bool contains(const T& item) const {
    auto it = std::lower_bound(items_.begin(), items_.end(), item);
    return it != items_.end() && !(item < *it);
  }

  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const T& operator[](std::size_t i) const { return items_[i]; }

  friend bool operator==(const SortedSet& a, const SortedSet& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  void normalize() {
    if (!std::is_sorted(items_.begin(), items_.end())) std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  storage_type items_;
};

using AccessRelation = SortedSet<Access>;
using AccessMatrix = SortedSet<Permission>;

/// Classification table sorted by key. Normally functional; a raw table built
/// through StateBuilder::build_unchecked may hold several classes per key.
template <class Key>
class ClassTable {
 public:
  using Entry = Classification<Key>;

  ClassTable() = default;
  ClassTable(std::initializer_list<Entry> entries) : entries_(entries) {}

  const SecurityClass* find(Key id) const {
    auto it = lower(id);
    return it != entries_.end() && it->id == id ? &it->cls : nullptr;
  }
  bool contains(Key id) const { return find(id) != nullptr; }

  /// Replaces every class bound to `id` with `cls`.
  void assign(Key id, const SecurityClass& cls) {
    erase(id);
    entries_.insert(Entry{id, cls});
  }
  bool erase(Key id) {
    return entries_.erase_if([id](const Entry& e) { return e.id == id; }) != 0;
  }
  /// Adds a binding without removing existing ones for the same key.
  void add_raw(Key id, const SecurityClass& cls) { entries_.insert(Entry{id, cls}); }

  bool is_functional() const {
    for (std::size_t i = 1; i < entries_.size(); ++i)
      if (entries_[i - 1].id == entries_[i].id) return false;
    return true;
  }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const ClassTable&, const ClassTable&) = default;

 private:
  auto lower(Key id) const {
    return std::lower_bound(entries_.begin(), entries_.end(), id,
                            [](const Entry& e, Key k) { return e.id < k; });
  }

  SortedSet<Entry> entries_;
};

/// The five-component state: current reads (br), current writes (bw), object
/// classes (fo), subject classes (fs) and the access matrix (m).
///
/// Values are immutable; the `with_*`/`without_*` members return updated
/// copies.
class SystemState {
 public:
  SystemState() = default;
  SystemState(AccessRelation reads, AccessRelation writes, ClassTable<ObjectId> object_classes,
              ClassTable<SubjectId> subject_classes, AccessMatrix matrix)
      : reads_(std::move(reads)),
        writes_(std::move(writes)),
        object_classes_(std::move(object_classes)),
        subject_classes_(std::move(subject_classes)),
        matrix_(std::move(matrix)) {}

  const AccessRelation& reads() const { return reads_; }
  const AccessRelation& writes() const { return writes_; }
  const ClassTable<ObjectId>& object_classes() const { return object_classes_; }
  const ClassTable<SubjectId>& subject_classes() const { return subject_classes_; }
  const AccessMatrix& matrix() const { return matrix_; }

  const SecurityClass* object_class(ObjectId o) const { return object_classes_.find(o); }
  const SecurityClass* subject_class(SubjectId s) const { return subject_classes_.find(s); }
  bool permits(ObjectId o, SubjectId s, MatrixMode mode) const {
    return matrix_.contains(Permission{o, s, mode});
  }
  bool is_reading(SubjectId s, ObjectId o) const { return reads_.contains(Access{s, o}); }
  bool is_writing(SubjectId s, ObjectId o) const { return writes_.contains(Access{s, o}); }
  /// o occurs as the object of some matrix entry.
  bool in_matrix_domain(ObjectId o) const;
  /// o occurs in the range of br or bw.
  bool is_accessed(ObjectId o) const;

  SystemState with_read(Access a) const;
  SystemState without_read(Access a) const;
  SystemState with_write(Access a) const;
  SystemState without_write(Access a) const;
  SystemState with_permission(Permission p) const;
  SystemState without_permission(Permission p) const;
  SystemState without_object_permissions(ObjectId o) const;
  SystemState with_object_class(ObjectId o, const SecurityClass& cls) const;
  SystemState without_object_class(ObjectId o) const;

  friend bool operator==(const SystemState&, const SystemState&) = default;

 private:
  AccessRelation reads_;
  AccessRelation writes_;
  ClassTable<ObjectId> object_classes_;
  ClassTable<SubjectId> subject_classes_;
  AccessMatrix matrix_;
};

/// Incremental construction of a SystemState.
class StateBuilder {
 public:
  StateBuilder& subject(SubjectId s, SecurityClass cls);
  StateBuilder& object(ObjectId o, SecurityClass cls);
  StateBuilder& grant(ObjectId o, SubjectId s, MatrixMode mode);
  StateBuilder& reading(SubjectId s, ObjectId o);
  StateBuilder& writing(SubjectId s, ObjectId o);

  /// Throws std::invalid_argument if a subject or object was given two
  /// different classes.
  SystemState build() const;
  /// Keeps conflicting classifications as a multi-map (ill-formed states for
  /// mutation tests).
  SystemState build_unchecked() const;

 private:
  AccessRelation reads_, writes_;
  ClassTable<ObjectId> objects_;
  ClassTable<SubjectId> subjects_;
  AccessMatrix matrix_;
};

// Invariant predicates. All are pure and total.

bool sec_cond(const SystemState& st);
bool star_prop(const SystemState& st);
bool fo_functional(const SystemState& st);
bool fs_functional(const SystemState& st);
bool reads_in_matrix(const SystemState& st);
bool writes_in_matrix(const SystemState& st);
bool well_formed(const SystemState& st);

/// star_prop plus the strict reading of Apply inside the nested quantifiers:
/// every written object is classified, and if anything is written then every
/// read object is classified too.
bool strict_star_prop(const SystemState& st);

/// The four type invariants by name, in reporting order.
enum class TypeInvariant : std::uint8_t { fo_functional, fs_functional, reads_in_matrix, writes_in_matrix };
std::string_view to_string(TypeInvariant inv);
/// First violated type invariant, if any.
std::optional<TypeInvariant> first_type_violation(const SystemState& st);

}  // namespace blp
