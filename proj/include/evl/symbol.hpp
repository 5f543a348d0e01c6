#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace evl {

/// Interned identifier. Two symbols are equal iff their spellings are equal.
///
/// The interning table is process-wide and append-only, so a Symbol stays
/// valid for the lifetime of the program and can be shared freely between
/// threads. Ordering is lexicographic on the spelling, which keeps every
/// sorted output independent of interning order.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] std::size_t hash() const noexcept;
  [[nodiscard]] bool empty() const noexcept { return entry_ == nullptr; }

  friend bool operator==(Symbol a, Symbol b) noexcept { return a.entry_ == b.entry_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b);

  struct Entry;

 private:
  const Entry* entry_ = nullptr;
};

}  // namespace evl

template <>
struct std::hash<evl::Symbol> {
  std::size_t operator()(evl::Symbol s) const noexcept { return s.hash(); }
};
