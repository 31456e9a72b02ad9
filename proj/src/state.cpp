#include <blp/state.hpp>

#include <stdexcept>
#include <string>

namespace blp {

std::vector<CategoryId> CategorySet::members() const {
  std::vector<CategoryId> out;
  for (std::uint32_t i = 0; i < kMaxCategories; ++i)
    if (bits_.test(i)) out.push_back(CategoryId::from_index(i));
  return out;
}

bool operator<(const CategorySet& a, const CategorySet& b) {
  for (std::uint32_t i = 0; i < kMaxCategories; ++i)
    if (a.bits_.test(i) != b.bits_.test(i)) return b.bits_.test(i);
  return false;
}

std::string_view to_string(MatrixMode mode) {
  switch (mode) {
    case MatrixMode::read: return "read";
    case MatrixMode::write: return "write";
    case MatrixMode::ctrl: return "ctrl";
  }
  return "?";
}

std::string_view to_string(AccessMode mode) { return to_string(to_matrix_mode(mode)); }

std::string_view to_string(Decision decision) { return decision == Decision::yes ? "yes" : "no"; }

std::string_view to_string(TypeInvariant inv) {
  switch (inv) {
    case TypeInvariant::fo_functional: return "foFunctional";
    case TypeInvariant::fs_functional: return "fsFunctional";
    case TypeInvariant::reads_in_matrix: return "ranBrInDomM";
    case TypeInvariant::writes_in_matrix: return "ranBwInDomM";
  }
  return "?";
}

bool SystemState::in_matrix_domain(ObjectId o) const {
  // Matrix entries are ordered by object first.
  for (const auto& p : matrix_) {
    if (p.object == o) return true;
    if (o < p.object) return false;
  }
  return false;
}

bool SystemState::is_accessed(ObjectId o) const {
  for (const auto& a : reads_)
    if (a.object == o) return true;
  for (const auto& a : writes_)
    if (a.object == o) return true;
  return false;
}

SystemState SystemState::with_read(Access a) const {
  SystemState next = *this;
  next.reads_.insert(a);
  return next;
}

SystemState SystemState::without_read(Access a) const {
  SystemState next = *this;
  next.reads_.erase(a);
  return next;
}

SystemState SystemState::with_write(Access a) const {
  SystemState next = *this;
  next.writes_.insert(a);
  return next;
}

SystemState SystemState::without_write(Access a) const {
  SystemState next = *this;
  next.writes_.erase(a);
  return next;
}

SystemState SystemState::with_permission(Permission p) const {
  SystemState next = *this;
  next.matrix_.insert(p);
  return next;
}

SystemState SystemState::without_permission(Permission p) const {
  SystemState next = *this;
  next.matrix_.erase(p);
  return next;
}

SystemState SystemState::without_object_permissions(ObjectId o) const {
  SystemState next = *this;
  next.matrix_.erase_if([o](const Permission& p) { return p.object == o; });
  return next;
}

SystemState SystemState::with_object_class(ObjectId o, const SecurityClass& cls) const {
  SystemState next = *this;
  next.object_classes_.assign(o, cls);
  return next;
}

SystemState SystemState::without_object_class(ObjectId o) const {
  SystemState next = *this;
  next.object_classes_.erase(o);
  return next;
}

StateBuilder& StateBuilder::subject(SubjectId s, SecurityClass cls) {
  subjects_.add_raw(s, cls);
  return *this;
}

StateBuilder& StateBuilder::object(ObjectId o, SecurityClass cls) {
  objects_.add_raw(o, cls);
  return *this;
}

StateBuilder& StateBuilder::grant(ObjectId o, SubjectId s, MatrixMode mode) {
  matrix_.insert(Permission{o, s, mode});
  return *this;
}

StateBuilder& StateBuilder::reading(SubjectId s, ObjectId o) {
  reads_.insert(Access{s, o});
  return *this;
}

StateBuilder& StateBuilder::writing(SubjectId s, ObjectId o) {
  writes_.insert(Access{s, o});
  return *this;
}

SystemState StateBuilder::build() const {
  if (!objects_.is_functional()) throw std::invalid_argument("object classified twice");
  if (!subjects_.is_functional()) throw std::invalid_argument("subject classified twice");
  return build_unchecked();
}

SystemState StateBuilder::build_unchecked() const {
  return SystemState(reads_, writes_, objects_, subjects_, matrix_);
}

bool sec_cond(const SystemState& st) {
  for (const auto& [s, o] : st.reads()) {
    const auto* subject_cls = st.subject_class(s);
    const auto* object_cls = st.object_class(o);
    if (subject_cls == nullptr || object_cls == nullptr) return false;
    if (!class_leq(*object_cls, *subject_cls)) return false;
  }
  return true;
}

bool star_prop(const SystemState& st) {
  for (const auto& r : st.reads()) {
    for (const auto& w : st.writes()) {
      if (r.subject != w.subject) continue;
      const auto* read_cls = st.object_class(r.object);
      const auto* write_cls = st.object_class(w.object);
      if (read_cls == nullptr || write_cls == nullptr) return false;
      if (!class_leq(*read_cls, *write_cls)) return false;
    }
  }
  return true;
}

bool strict_star_prop(const SystemState& st) {
  if (!star_prop(st)) return false;
  for (const auto& w : st.writes())
    if (!st.object_classes().contains(w.object)) return false;
  if (!st.writes().empty())
    for (const auto& r : st.reads())
      if (!st.object_classes().contains(r.object)) return false;
  return true;
}

bool fo_functional(const SystemState& st) { return st.object_classes().is_functional(); }

bool fs_functional(const SystemState& st) { return st.subject_classes().is_functional(); }

bool reads_in_matrix(const SystemState& st) {
  for (const auto& a : st.reads())
    if (!st.in_matrix_domain(a.object)) return false;
  return true;
}

bool writes_in_matrix(const SystemState& st) {
  for (const auto& a : st.writes())
    if (!st.in_matrix_domain(a.object)) return false;
  return true;
}

bool well_formed(const SystemState& st) { return !first_type_violation(st).has_value(); }

std::optional<TypeInvariant> first_type_violation(const SystemState& st) {
  if (!fo_functional(st)) return TypeInvariant::fo_functional;
  if (!fs_functional(st)) return TypeInvariant::fs_functional;
  if (!reads_in_matrix(st)) return TypeInvariant::reads_in_matrix;
  if (!writes_in_matrix(st)) return TypeInvariant::writes_in_matrix;
  return std::nullopt;
}

}  // namespace blp
