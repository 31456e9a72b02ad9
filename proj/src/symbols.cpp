#include <blp/symbols.hpp>

#include <array>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace blp::detail {
namespace {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

class InternTable {
 public:
  explicit InternTable(std::uint32_t capacity) : capacity_(capacity) {}

  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = index_.find(name); it != index_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = index_.find(name); it != index_.end()) return it->second;
    if (names_.size() >= capacity_)
      throw std::length_error("too many distinct identifiers of this kind (limit " +
                              std::to_string(capacity_) + ")");
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
  }

  std::string_view name(std::uint32_t id) const {
    std::shared_lock lock(mutex_);
    if (id >= names_.size()) return "<unset>";
    return names_[id];
  }

 private:
  std::uint32_t capacity_;
  mutable std::shared_mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> index_;
};

InternTable& table(SymbolKind kind) {
  static std::array<InternTable, 3> tables{InternTable{UINT32_MAX - 1}, InternTable{UINT32_MAX - 1},
                                           InternTable{kMaxCategories}};
  return tables[static_cast<std::size_t>(kind)];
}

}  // namespace

std::uint32_t intern(SymbolKind kind, std::string_view name) { return table(kind).intern(name); }

std::string_view symbol_name(SymbolKind kind, std::uint32_t index) { return table(kind).name(index); }

}  // namespace blp::detail
