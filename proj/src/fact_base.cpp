#include "evl/fact_base.hpp"

#include <algorithm>

#include "evl/matching.hpp"

namespace evl {

FactBase::FactBase(std::vector<Term> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  by_hash_.reserve(atoms_.size());
  for (std::uint32_t i = 0; i < atoms_.size(); ++i) {
    const Term& a = atoms_[i];
    by_hash_.emplace(a.hash(), i);
    coarse_[coarse_key(a)].push_back(i);
    Key fine;
    if (fine_key(a, fine)) fine_[fine].push_back(i);
  }
}

FactBase::Key FactBase::coarse_key(const Term& t) {
  return Key{t.name(), static_cast<std::uint32_t>(t.arity()), Symbol(), 0};
}

bool FactBase::fine_key(const Term& t, Key& out) {
  if (t.arity() == 0 || !t.args()[0].is_compound()) return false;
  const Term& first = t.args()[0];
  out = Key{t.name(), static_cast<std::uint32_t>(t.arity()), first.name(),
            static_cast<std::uint32_t>(first.arity())};
  return true;
}

bool FactBase::contains(const Term& ground) const {
  auto [lo, hi] = by_hash_.equal_range(ground.hash());
  for (auto it = lo; it != hi; ++it)
    if (atoms_[it->second] == ground) return true;
  return false;
}

bool FactBase::contains_instance(const Term& pattern, const Substitution& s) const {
  auto [lo, hi] = by_hash_.equal_range(hash_under(pattern, s));
  for (auto it = lo; it != hi; ++it)
    if (instance_equal(pattern, s, atoms_[it->second])) return true;
  return false;
}

std::span<const std::uint32_t> FactBase::candidates(const Term& pattern) const {
  Key fine;
  const auto& index = fine_key(pattern, fine) ? fine_ : coarse_;
  const Key key = &index == &fine_ ? fine : coarse_key(pattern);
  auto it = index.find(key);
  if (it == index.end()) return {};
  return it->second;
}

}  // namespace evl
