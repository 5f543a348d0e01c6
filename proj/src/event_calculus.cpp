#include "evl/event_calculus.hpp"

#include <algorithm>

#include "evl/matching.hpp"

namespace evl {

namespace {

const Symbol& holds_at_symbol() {
  static const Symbol s("holdsAt");
  return s;
}
const Symbol& initiated_symbol() {
  static const Symbol s("initiatedAt");
  return s;
}
const Symbol& terminated_symbol() {
  static const Symbol s("terminatedAt");
  return s;
}

void sort_unique(std::vector<Term>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void collect_symbols(const Term& t, std::vector<Term>& out) {
  if (t.kind() == Term::Kind::Symbol) {
    out.push_back(t);
  } else if (t.is_compound()) {
    for (const auto& a : t.args()) collect_symbols(a, out);
  }
}

// Seeds a substitution with the head's time argument bound to t and its
// fluent argument matched against `fluent`.
bool seed_head(const Clause& clause, std::int64_t t, const Term& fluent, Substitution& s) {
  const auto& args = clause.head.args();
  if (args.size() != 2) return false;
  if (!match(args[1], Term::integer(t), s)) return false;
  return match(args[0], fluent, s);
}

}  // namespace

Symbol head_predicate(HeadKind kind) {
  return kind == HeadKind::Initiation ? initiated_symbol() : terminated_symbol();
}

std::string_view to_string(HeadKind kind) {
  return kind == HeadKind::Initiation ? "initiatedAt" : "terminatedAt";
}

std::optional<HeadKind> head_kind_of(const Literal& head) {
  if (head.negated || head.arity() != 2) return std::nullopt;
  if (head.predicate() == initiated_symbol()) return HeadKind::Initiation;
  if (head.predicate() == terminated_symbol()) return HeadKind::Termination;
  return std::nullopt;
}

Target Target::named(std::string_view functor, std::size_t arity) {
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(Term::variable("_F" + std::to_string(i)));
  return Target(Term::compound(functor, std::move(args)));
}

bool Target::matches(const Term& fluent) const {
  Substitution s;
  return match(pattern_, fluent, s);
}

std::size_t Theory::size() const noexcept {
  std::size_t n = 0;
  for (const auto& c : clauses) n += c.size();
  return n;
}

Literal holds_at(const Term& fluent, std::int64_t time) {
  return Literal(Term::compound(holds_at_symbol(), {fluent, Term::integer(time)}));
}

GroundingContext::GroundingContext(const Interpretation& interp, const Target& target,
                                   std::vector<Term> derived_atoms)
    : id_(interp.id), t_(interp.t), target_(target) {
  std::vector<Term> atoms = std::move(derived_atoms);
  atoms.reserve(atoms.size() + interp.narrative.size());
  std::vector<Term> symbols;
  for (const auto& l : interp.narrative) {
    if (l.negated) continue;
    atoms.push_back(l.atom);
    for (const auto& a : l.atom.args()) collect_symbols(a, symbols);
  }
  for (const auto& l : interp.annotation) {
    if (l.negated || l.predicate() != holds_at_symbol() || l.arity() != 2) continue;
    const Term& fluent = l.args()[0];
    const Term& when = l.args()[1];
    if (when.kind() != Term::Kind::Integer || !target.matches(fluent)) continue;
    if (when.value() == t_) {
      now_.push_back(fluent);
    } else if (when.value() == t_ + 1) {
      next_.push_back(fluent);
    } else {
      continue;
    }
    collect_symbols(fluent, symbols);
  }
  sort_unique(now_);
  sort_unique(next_);
  now_set_.insert(now_.begin(), now_.end());
  next_set_.insert(next_.begin(), next_.end());
  sort_unique(symbols);
  domain_ = std::move(symbols);
  facts_ = FactBase(std::move(atoms));
}

namespace {

std::vector<Term> derived_for(const Interpretation& interp, std::int64_t time,
                              const SpatialVocabulary& vocabulary) {
  std::vector<Term> atoms;
  for (const auto& l : interp.narrative)
    if (!l.negated) atoms.push_back(l.atom);
  return derive_spatial(atoms, time, vocabulary);
}

}  // namespace

GroundingContext::GroundingContext(const Interpretation& interp, const Target& target,
                                   const SpatialVocabulary& vocabulary)
    : GroundingContext(interp, target, [&] {
        auto a = derived_for(interp, interp.t, vocabulary);
        auto b = derived_for(interp, interp.t + 1, vocabulary);
        a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
        return a;
      }()) {}

std::shared_ptr<const GroundingContext> ContextBuilder::build(const Interpretation& interp) {
  std::vector<Term> at_t;
  if (cached_time_ && *cached_time_ == interp.t) {
    at_t = std::move(cached_atoms_);
  } else {
    at_t = derived_for(interp, interp.t, vocabulary_);
  }
  std::vector<Term> at_next = derived_for(interp, interp.t + 1, vocabulary_);
  cached_time_ = interp.t + 1;
  cached_atoms_ = at_next;

  std::vector<Term> all = std::move(at_t);
  all.insert(all.end(), std::make_move_iterator(at_next.begin()),
             std::make_move_iterator(at_next.end()));
  return std::make_shared<const GroundingContext>(interp, target_, std::move(all));
}

bool fires(const Clause& clause, const GroundingContext& ctx, const Term& fluent) {
  Substitution s;
  if (!seed_head(clause, ctx.t(), fluent, s)) return false;
  return body_satisfiable(clause.body, ctx.facts(), s);
}

std::vector<Term> firing_fluents(const Clause& clause, const GroundingContext& ctx,
                                 const Target& target) {
  std::vector<Term> out;
  const auto& hargs = clause.head.args();
  if (hargs.size() != 2) return out;
  Substitution seed;
  if (!match(hargs[1], Term::integer(ctx.t()), seed)) return out;
  const Term& fluent = hargs[0];

  for_each_match(clause.body, ctx.facts(), seed, [&](const Substitution& s) {
    std::vector<Symbol> vars;
    fluent.collect_variables(vars);
    std::vector<Symbol> free;
    const auto& domain = ctx.domain();
    for (auto v : vars) {
      const Term* value = s.lookup(v);
      if (!value) {
        free.push_back(v);
      } else if (!std::binary_search(domain.begin(), domain.end(), *value)) {
        return true;
      }
    }
    if (free.empty()) {
      Term f = apply(fluent, s);
      if (target.matches(f)) out.push_back(std::move(f));
      return true;
    }
    // Head variables the body leaves unbound range over the symbolic domain.
    if (domain.empty()) return true;
    std::vector<std::size_t> idx(free.size(), 0);
    Substitution ext = s;
    const std::size_t base = ext.size();
    while (true) {
      ext.truncate(base);
      for (std::size_t i = 0; i < free.size(); ++i) ext.bind(free[i], domain[idx[i]]);
      Term f = apply(fluent, ext);
      // Negated body literals may mention the newly bound variables.
      if (target.matches(f) && body_satisfiable(clause.body, ctx.facts(), ext))
        out.push_back(std::move(f));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == domain.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    return true;
  });
  sort_unique(out);
  return out;
}

OutcomeDelta count_outcomes(const Clause& clause, const GroundingContext& ctx,
                            const Target& target) {
  OutcomeDelta d;
  const auto kind = head_kind_of(clause.head);
  if (!kind) return d;
  if (*kind == HeadKind::Initiation) {
    for (const auto& f : firing_fluents(clause, ctx, target)) {
      if (ctx.holds_next(f))
        ++d.tp;
      else
        ++d.fp;
    }
  } else {
    for (const auto& f : ctx.holding_now()) {
      if (!ctx.holds_next(f)) continue;
      if (fires(clause, ctx, f))
        ++d.fn;
      else
        ++d.tp;
    }
  }
  return d;
}

std::vector<Term> next_state(std::span<const Clause> theory, const GroundingContext& ctx,
                             std::span<const Term> holding_now) {
  std::vector<Term> out;
  for (const auto& c : theory) {
    if (head_kind_of(c.head) != HeadKind::Initiation) continue;
    auto f = firing_fluents(c, ctx, ctx.target());
    out.insert(out.end(), f.begin(), f.end());
  }
  for (const auto& f : holding_now) {
    bool terminated = false;
    for (const auto& c : theory) {
      if (head_kind_of(c.head) == HeadKind::Termination && fires(c, ctx, f)) {
        terminated = true;
        break;
      }
    }
    if (!terminated) out.push_back(f);
  }
  sort_unique(out);
  return out;
}

std::vector<Literal> compute_model(const Theory& theory, const GroundingContext& ctx) {
  std::vector<Literal> out;
  for (const auto& f : next_state(theory.clauses, ctx, ctx.holding_now()))
    out.push_back(holds_at(f, ctx.t() + 1));
  return out;
}

const std::vector<Term>& Recognizer::step(const GroundingContext& ctx) {
  if (!last_t_ || *last_t_ + 1 != ctx.t()) state_.clear();
  state_ = next_state(theory_.clauses, ctx, state_);
  last_t_ = ctx.t();
  return state_;
}

std::vector<Literal> infer_stream(const Theory& theory, std::span<const Interpretation> stream,
                                  const Target& target, const SpatialVocabulary& vocabulary) {
  std::vector<Literal> out;
  ContextBuilder builder(target, vocabulary);
  Recognizer recognizer(theory);
  for (const auto& interp : stream) {
    auto ctx = builder.build(interp);
    for (const auto& f : recognizer.step(*ctx)) out.push_back(holds_at(f, ctx->t() + 1));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace evl
