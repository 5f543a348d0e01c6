#include "evl/matching.hpp"

#include <algorithm>

namespace evl {

namespace {

bool match_impl(const Term& pattern, const Term& target, Substitution& s) {
  switch (pattern.kind()) {
    case Term::Kind::Variable:
      if (const Term* bound = s.lookup(pattern.name())) return *bound == target;
      s.bind(pattern.name(), target);
      return true;
    case Term::Kind::Compound: {
      if (!target.is_compound() || target.name() != pattern.name() ||
          target.arity() != pattern.arity())
        return false;
      const auto& pa = pattern.args();
      const auto& ta = target.args();
      for (std::size_t i = 0; i < pa.size(); ++i)
        if (!match_impl(pa[i], ta[i], s)) return false;
      return true;
    }
    default:
      return pattern == target;
  }
}

std::size_t bound_variable_count(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return s.lookup(t.name()) ? 1 : 0;
    case Term::Kind::Compound: {
      std::size_t n = 0;
      for (const auto& a : t.args()) n += bound_variable_count(a, s);
      return n;
    }
    default:
      return 0;
  }
}

bool has_matching_fact(const Term& pattern, const FactBase& facts, Substitution& s) {
  for (auto idx : facts.candidates(pattern)) {
    const std::size_t mark = s.size();
    const bool ok = match_impl(pattern, facts.atoms()[idx], s);
    s.truncate(mark);
    if (ok) return true;
  }
  return false;
}

class BodySearch {
 public:
  BodySearch(std::span<const Literal> body, const FactBase& facts,
             const std::function<bool(const Substitution&)>& visit)
      : body_(body), facts_(facts), visit_(visit), done_(body.size(), 0) {}

  // Returns false when the visitor asked to stop.
  bool run(Substitution& s, std::size_t remaining) {
    if (remaining == 0) return visit_(s);
    const std::size_t i = pick(s);
    const Literal& lit = body_[i];
    done_[i] = 1;
    bool keep_going = true;
    if (lit.negated) {
      const bool present = ground_under(lit.atom, s) ? facts_.contains_instance(lit.atom, s)
                                                     : has_matching_fact(lit.atom, facts_, s);
      if (!present) keep_going = run(s, remaining - 1);
    } else if (ground_under(lit.atom, s)) {
      if (facts_.contains_instance(lit.atom, s)) keep_going = run(s, remaining - 1);
    } else {
      for (auto idx : facts_.candidates(lit.atom)) {
        const std::size_t mark = s.size();
        if (match_impl(lit.atom, facts_.atoms()[idx], s)) keep_going = run(s, remaining - 1);
        s.truncate(mark);
        if (!keep_going) break;
      }
    }
    done_[i] = 0;
    return keep_going;
  }

 private:
  // Ground literals first (pure filters), then the positive literal with the
  // most bound variables. Negated literals wait until their variables are
  // bound, unless nothing else is left.
  std::size_t pick(const Substitution& s) const {
    std::size_t best = body_.size();
    std::size_t best_score = 0;
    std::size_t fallback = body_.size();
    for (std::size_t i = 0; i < body_.size(); ++i) {
      if (done_[i]) continue;
      const Literal& lit = body_[i];
      const bool ground = ground_under(lit.atom, s);
      std::size_t score;
      if (lit.negated) {
        if (fallback == body_.size()) fallback = i;
        if (!ground) continue;
        score = 1000;
      } else {
        score = ground ? 999 : 1 + bound_variable_count(lit.atom, s);
      }
      if (best == body_.size() || score > best_score) {
        best = i;
        best_score = score;
      }
    }
    return best != body_.size() ? best : fallback;
  }

  std::span<const Literal> body_;
  const FactBase& facts_;
  const std::function<bool(const Substitution&)>& visit_;
  std::vector<char> done_;
};

bool subsume_body(const std::vector<Literal>& general, std::size_t idx,
                  const std::vector<Literal>& specific, Substitution& s) {
  if (idx == general.size()) return true;
  const Literal& lit = general[idx];
  for (const auto& candidate : specific) {
    if (candidate.negated != lit.negated || candidate.predicate() != lit.predicate() ||
        candidate.arity() != lit.arity())
      continue;
    const std::size_t mark = s.size();
    if (match_impl(lit.atom, candidate.atom, s) && subsume_body(general, idx + 1, specific, s))
      return true;
    s.truncate(mark);
  }
  return false;
}

}  // namespace

bool match(const Term& pattern, const Term& target, Substitution& s) {
  const std::size_t mark = s.size();
  if (match_impl(pattern, target, s)) return true;
  s.truncate(mark);
  return false;
}

bool instance_equal(const Term& pattern, const Substitution& s, const Term& ground) {
  switch (pattern.kind()) {
    case Term::Kind::Variable: {
      const Term* bound = s.lookup(pattern.name());
      return bound ? *bound == ground : false;
    }
    case Term::Kind::Compound: {
      if (!ground.is_compound() || ground.name() != pattern.name() ||
          ground.arity() != pattern.arity())
        return false;
      for (std::size_t i = 0; i < pattern.arity(); ++i)
        if (!instance_equal(pattern.args()[i], s, ground.args()[i])) return false;
      return true;
    }
    default:
      return pattern == ground;
  }
}

bool for_each_match(std::span<const Literal> body, const FactBase& facts, const Substitution& seed,
                    const std::function<bool(const Substitution&)>& visit) {
  BodySearch search(body, facts, visit);
  Substitution s = seed;
  return search.run(s, body.size());
}

std::vector<Substitution> match_body(std::span<const Literal> body, const FactBase& facts,
                                     const Substitution& seed) {
  std::vector<Substitution> out;
  for_each_match(body, facts, seed, [&](const Substitution& s) {
    out.push_back(s.normalized());
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool body_satisfiable(std::span<const Literal> body, const FactBase& facts,
                      const Substitution& seed) {
  return !for_each_match(body, facts, seed, [](const Substitution&) { return false; });
}

bool theta_subsumes(const Clause& c1, const Clause& c2) {
  if (c1.head.negated != c2.head.negated) return false;
  Substitution s;
  if (!match(c1.head.atom, c2.head.atom, s)) return false;
  return subsume_body(c1.body, 0, c2.body, s);
}

}  // namespace evl
