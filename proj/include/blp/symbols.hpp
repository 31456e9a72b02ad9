#pragma once

// Interned identifiers for subjects, objects and categories.
//
// Each kind has its own process-wide intern table, so indices are dense per
// kind. Identifier order is intern order; it is total and stable for the life
// of the process, which is all canonical enumeration and reporting need.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace blp {

enum class SymbolKind : std::uint8_t { subject, object, category };

namespace detail {
std::uint32_t intern(SymbolKind kind, std::string_view name);
std::string_view symbol_name(SymbolKind kind, std::uint32_t index);
}  // namespace detail

/// Upper bound on distinct category names per process (CategorySet is a
/// fixed-width bitmap over category intern indices).
inline constexpr std::uint32_t kMaxCategories = 128;

template <SymbolKind Kind>
class Symbol {
 public:
  constexpr Symbol() = default;
  explicit Symbol(std::string_view name) : index_(detail::intern(Kind, name)) {}

  static constexpr Symbol from_index(std::uint32_t index) {
    Symbol s;
    s.index_ = index;
    return s;
  }

  constexpr std::uint32_t index() const { return index_; }
  std::string_view name() const { return detail::symbol_name(Kind, index_); }

  friend constexpr auto operator<=>(Symbol, Symbol) = default;

  friend std::ostream& operator<<(std::ostream& out, Symbol s) { return out << s.name(); }

 private:
  std::uint32_t index_ = UINT32_MAX;  // unset
};

using SubjectId = Symbol<SymbolKind::subject>;
using ObjectId = Symbol<SymbolKind::object>;
using CategoryId = Symbol<SymbolKind::category>;

}  // namespace blp

template <blp::SymbolKind Kind>
struct std::hash<blp::Symbol<Kind>> {
  std::size_t operator()(blp::Symbol<Kind> s) const noexcept { return s.index(); }
};
