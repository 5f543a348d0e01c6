#include "evl/symbol.hpp"

#include <mutex>
#include <unordered_map>

namespace evl {

struct Symbol::Entry {
  std::string name;
  std::size_t hash;
};

namespace {

struct SymbolTable {
  std::mutex mutex;
  // Node-based map: entry addresses never move once inserted.
  std::unordered_map<std::string, Symbol::Entry> entries;

  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }
};

const std::string& empty_name() {
  static const std::string name;
  return name;
}

}  // namespace

Symbol::Symbol(std::string_view name) {
  auto& table = SymbolTable::instance();
  std::lock_guard lock(table.mutex);
  auto it = table.entries.find(std::string(name));
  if (it == table.entries.end()) {
    std::string key(name);
    const std::size_t h = std::hash<std::string>{}(key);
    it = table.entries.emplace(key, Symbol::Entry{key, h}).first;
  }
  entry_ = &it->second;
}

const std::string& Symbol::name() const { return entry_ ? entry_->name : empty_name(); }

std::size_t Symbol::hash() const noexcept { return entry_ ? entry_->hash : 0; }

std::strong_ordering operator<=>(Symbol a, Symbol b) {
  if (a.entry_ == b.entry_) return std::strong_ordering::equal;
  const int c = a.name().compare(b.name());
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace evl
