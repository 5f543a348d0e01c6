#include "evl/bottom_clause.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "evl/matching.hpp"

namespace evl {

namespace {

bool is_time_type(Symbol type) {
  static const Symbol time("time");
  return type == time;
}

using Known = std::map<Symbol, std::set<Term>>;

bool constant_allowed(const ModeBias& bias, Symbol type, const Term& value) {
  auto it = bias.constants.find(type);
  if (it == bias.constants.end()) return true;
  return std::find(it->second.begin(), it->second.end(), value) != it->second.end();
}

}  // namespace

Literal Seed::head() const {
  return Literal(Term::compound(head_predicate(kind), {fluent, Term::integer(time)}));
}

std::strong_ordering operator<=>(const Seed& a, const Seed& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.time <=> b.time; c != 0) return c;
  return a.fluent <=> b.fluent;
}

std::vector<Seed> abduce_seeds(const GroundingContext& ctx) {
  std::vector<Seed> out;
  for (const auto& f : ctx.holding_next())
    if (!ctx.holds_now(f)) out.push_back(Seed{HeadKind::Initiation, f, ctx.t()});
  for (const auto& f : ctx.holding_now())
    if (!ctx.holds_next(f)) out.push_back(Seed{HeadKind::Termination, f, ctx.t()});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Seed> abduce_seeds(const Interpretation& interp, const Target& target) {
  return abduce_seeds(GroundingContext(interp, target, std::vector<Term>{}));
}

BottomClause saturate(const Seed& seed, const GroundingContext& ctx, const ModeBias& bias,
                      std::size_t max_body) {
  BottomClause out;
  out.head = seed.head();
  const ModeDeclaration* head_mode = bias.head_mode_for(out.head);
  if (!head_mode) return out;

  Known known;
  {
    auto values = head_mode->bind(out.head);
    for (std::size_t i = 0; i < head_mode->slots.size(); ++i)
      if (head_mode->slots[i].kind != Placemarker::Kind::Constant)
        known[head_mode->slots[i].type].insert((*values)[i]);
  }

  std::set<Literal> seen;
  bool grew = true;
  while (grew && out.body.size() < max_body) {
    grew = false;
    Known discovered;
    for (std::size_t m = 0; m < bias.bodies.size() && out.body.size() < max_body; ++m) {
      const ModeDeclaration& mode = bias.bodies[m];
      if (mode.pattern.negated) continue;
      for (auto idx : ctx.facts().candidates(mode.pattern.atom)) {
        if (out.body.size() >= max_body) break;
        const Literal lit(ctx.facts().atoms()[idx]);
        if (seen.contains(lit)) continue;
        auto values = mode.bind(lit);
        if (!values) continue;
        bool ok = true;
        for (std::size_t i = 0; i < mode.slots.size() && ok; ++i) {
          const auto& slot = mode.slots[i];
          const Term& v = (*values)[i];
          switch (slot.kind) {
            case Placemarker::Kind::Input: {
              auto it = known.find(slot.type);
              ok = it != known.end() && it->second.contains(v);
              break;
            }
            case Placemarker::Kind::Constant:
              ok = v.is_constant() && constant_allowed(bias, slot.type, v);
              break;
            case Placemarker::Kind::Output:
              ok = v.is_constant();
              break;
          }
        }
        if (!ok) continue;
        for (std::size_t i = 0; i < mode.slots.size(); ++i)
          if (mode.slots[i].kind == Placemarker::Kind::Output)
            discovered[mode.slots[i].type].insert((*values)[i]);
        seen.insert(lit);
        out.body.push_back(lit);
        out.body_modes.push_back(m);
        grew = true;
      }
    }
    for (auto& [type, values] : discovered) known[type].insert(values.begin(), values.end());
  }
  return out;
}

BottomClause saturate(const Seed& seed, const Interpretation& interp, const Target& target,
                      const ModeBias& bias, std::size_t max_body) {
  const GroundingContext ctx(interp, target, SpatialVocabulary::from_bias(bias));
  return saturate(seed, ctx, bias, max_body);
}

BottomClause variabilize(const BottomClause& ground, const ModeBias& bias) {
  BottomClause out;
  out.body_modes = ground.body_modes;

  std::vector<std::pair<Term, Symbol>> mapping;
  std::size_t time_vars = 0, other_vars = 0;
  auto var_for = [&](const Term& value, Symbol type) -> Term {
    for (const auto& [c, v] : mapping)
      if (c == value) return Term::variable(v);
    std::string name;
    if (is_time_type(type)) {
      name = time_vars == 0 ? "T" : "T" + std::to_string(time_vars);
      ++time_vars;
    } else {
      name = "X" + std::to_string(other_vars++);
    }
    const Symbol v(name);
    mapping.emplace_back(value, v);
    out.bindings.emplace_back(v, value);
    return Term::variable(v);
  };

  auto rewrite = [&](const Literal& lit, const ModeDeclaration* mode) -> Literal {
    if (!mode) return lit;
    auto values = mode->bind(lit);
    if (!values) return lit;
    Substitution s;
    for (std::size_t i = 0; i < mode->slots.size(); ++i) {
      const auto& slot = mode->slots[i];
      s.bind(mode->slot_variable(i),
             slot.kind == Placemarker::Kind::Constant ? (*values)[i] : var_for((*values)[i], slot.type));
    }
    return apply(mode->pattern, s);
  };

  auto body_mode = [&](std::size_t i) -> const ModeDeclaration* {
    if (i < ground.body_modes.size() && ground.body_modes[i] < bias.bodies.size() &&
        bias.bodies[ground.body_modes[i]].bind(ground.body[i]))
      return &bias.bodies[ground.body_modes[i]];
    for (const auto& m : bias.bodies)
      if (m.bind(ground.body[i])) return &m;
    return nullptr;
  };

  out.head = rewrite(ground.head, bias.head_mode_for(ground.head));
  out.body.reserve(ground.body.size());
  for (std::size_t i = 0; i < ground.body.size(); ++i) out.body.push_back(rewrite(ground.body[i], body_mode(i)));
  if (out.body_modes.size() != out.body.size()) {
    out.body_modes.clear();
    for (std::size_t i = 0; i < ground.body.size(); ++i) {
      const auto* m = body_mode(i);
      out.body_modes.push_back(m ? static_cast<std::size_t>(m - bias.bodies.data()) : bias.bodies.size());
    }
  }
  // Re-variabilizing keeps the original constants on record.
  if (!ground.bindings.empty()) {
    for (auto& [v, c] : out.bindings)
      for (const auto& [gv, gc] : ground.bindings)
        if (c.is_variable() && c.name() == gv) c = gc;
  }
  return out;
}

}  // namespace evl
