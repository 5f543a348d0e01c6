#include "evl/spatial.hpp"

#include <algorithm>
#include <cmath>

namespace evl {

namespace {

const Symbol& distance_less() {
  static const Symbol s("distanceLessThan");
  return s;
}
const Symbol& distance_more() {
  static const Symbol s("distanceMoreThan");
  return s;
}
const Symbol& direction_less() {
  static const Symbol s("directionLessThan");
  return s;
}
const Symbol& direction_more() {
  static const Symbol s("directionMoreThan");
  return s;
}

void add_threshold(std::vector<std::int64_t>& v, std::int64_t x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

struct Position {
  Term entity;
  double x = 0, y = 0;
};

struct Heading {
  Term entity;
  double degrees = 0;
};

Term comparison(Symbol pred, const Term& a, const Term& b, std::int64_t c, std::int64_t time) {
  return Term::compound(pred, {a, b, Term::integer(c), Term::integer(time)});
}

}  // namespace

bool is_spatial_predicate(Symbol predicate) {
  return predicate == distance_less() || predicate == distance_more() ||
         predicate == direction_less() || predicate == direction_more();
}

SpatialVocabulary SpatialVocabulary::from_bias(const ModeBias& bias) {
  SpatialVocabulary v;
  for (const auto& m : bias.bodies) {
    const Term& atom = m.pattern.atom;
    if (!is_spatial_predicate(atom.name()) || atom.arity() != 4) continue;
    const Term& threshold = atom.args()[2];
    auto& list = v.thresholds[atom.name()];
    if (threshold.kind() == Term::Kind::Integer) {
      add_threshold(list, threshold.value());
    } else if (threshold.is_variable()) {
      const std::size_t slot = m.slot_index(threshold.name());
      if (slot >= m.slots.size()) continue;
      auto it = bias.constants.find(m.slots[slot].type);
      if (it == bias.constants.end()) continue;
      for (const auto& c : it->second)
        if (c.kind() == Term::Kind::Integer) add_threshold(list, c.value());
    }
  }
  return v;
}

SpatialVocabulary SpatialVocabulary::from_clauses(std::span<const Clause> clauses) {
  SpatialVocabulary v;
  for (const auto& c : clauses)
    for (const auto& l : c.body)
      if (is_spatial_predicate(l.predicate()) && l.arity() == 4 &&
          l.args()[2].kind() == Term::Kind::Integer)
        add_threshold(v.thresholds[l.predicate()], l.args()[2].value());
  return v;
}

void SpatialVocabulary::merge(const SpatialVocabulary& other) {
  for (const auto& [pred, list] : other.thresholds)
    for (auto x : list) add_threshold(thresholds[pred], x);
}

double heading_difference(double a, double b) {
  double d = std::fmod(std::fabs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

std::vector<Term> derive_spatial(std::span<const Term> atoms, std::int64_t time,
                                 const SpatialVocabulary& vocabulary) {
  std::vector<Term> out;
  if (vocabulary.empty()) return out;

  static const Symbol holds_at("holdsAt");
  static const Symbol coords("coords");
  static const Symbol direction("direction");

  std::vector<Position> positions;
  std::vector<Heading> headings;
  for (const auto& a : atoms) {
    if (a.name() != holds_at || a.arity() != 2) continue;
    const Term& when = a.args()[1];
    if (when.kind() != Term::Kind::Integer || when.value() != time) continue;
    const Term& f = a.args()[0];
    if (f.name() == coords && f.arity() == 3 && f.args()[1].kind() == Term::Kind::Integer &&
        f.args()[2].kind() == Term::Kind::Integer) {
      positions.push_back({f.args()[0], static_cast<double>(f.args()[1].value()),
                           static_cast<double>(f.args()[2].value())});
    } else if (f.name() == direction && f.arity() == 2 &&
               f.args()[1].kind() == Term::Kind::Integer) {
      headings.push_back({f.args()[0], static_cast<double>(f.args()[1].value())});
    }
  }

  auto lookup = [&](Symbol pred) -> const std::vector<std::int64_t>* {
    auto it = vocabulary.thresholds.find(pred);
    return it == vocabulary.thresholds.end() ? nullptr : &it->second;
  };
  const auto* less = lookup(distance_less());
  const auto* more = lookup(distance_more());
  const auto* dir_less = lookup(direction_less());
  const auto* dir_more = lookup(direction_more());

  for (const auto& p : positions) {
    for (const auto& q : positions) {
      if (p.entity == q.entity) continue;
      const double d = std::hypot(p.x - q.x, p.y - q.y);
      if (less)
        for (auto c : *less)
          if (d < static_cast<double>(c)) out.push_back(comparison(distance_less(), p.entity, q.entity, c, time));
      if (more)
        for (auto c : *more)
          if (d > static_cast<double>(c)) out.push_back(comparison(distance_more(), p.entity, q.entity, c, time));
    }
  }
  for (const auto& p : headings) {
    for (const auto& q : headings) {
      if (p.entity == q.entity) continue;
      const double d = heading_difference(p.degrees, q.degrees);
      if (dir_less)
        for (auto c : *dir_less)
          if (d < static_cast<double>(c)) out.push_back(comparison(direction_less(), p.entity, q.entity, c, time));
      if (dir_more)
        for (auto c : *dir_more)
          if (d > static_cast<double>(c)) out.push_back(comparison(direction_more(), p.entity, q.entity, c, time));
    }
  }
  return out;
}

}  // namespace evl
