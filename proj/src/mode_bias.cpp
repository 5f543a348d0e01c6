#include "evl/mode_bias.hpp"

#include <algorithm>

#include "evl/matching.hpp"
#include "evl/parse.hpp"
#include "reader.hpp"

namespace evl {

namespace {

struct SlotCollector {
  std::vector<Placemarker> slots;
};

bool read_placemarker(detail::Reader& r, Term& out, void* ctx) {
  auto& collector = *static_cast<SlotCollector*>(ctx);
  const char c = r.peek();
  Placemarker::Kind kind;
  switch (c) {
    case '+':
      kind = Placemarker::Kind::Input;
      break;
    case '-':
      kind = Placemarker::Kind::Output;
      break;
    case '#':
      kind = Placemarker::Kind::Constant;
      break;
    default:
      r.fail(std::string("unknown placemarker symbol '") + c + "'");
  }
  r.advance();
  const std::string type = r.read_name();
  if (type.empty() || !std::islower(static_cast<unsigned char>(type[0])))
    r.fail("placemarker needs a lowercase type name");
  out = Term::variable("_P" + std::to_string(collector.slots.size()));
  collector.slots.push_back(Placemarker{kind, Symbol(type)});
  return true;
}

Term render_template(const Term& t, const ModeDeclaration& mode) {
  if (t.is_variable()) {
    const std::size_t i = mode.slot_index(t.name());
    if (i < mode.slots.size()) {
      const auto& p = mode.slots[i];
      const char prefix = p.kind == Placemarker::Kind::Input    ? '+'
                          : p.kind == Placemarker::Kind::Output ? '-'
                                                                : '#';
      return Term::symbol(std::string(1, prefix) + p.type.name());
    }
    return t;
  }
  if (t.is_compound()) {
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(render_template(a, mode));
    return Term::compound(t.name(), std::move(args));
  }
  return t;
}

}  // namespace

Symbol ModeDeclaration::slot_variable(std::size_t i) const {
  return Symbol("_P" + std::to_string(i));
}

std::size_t ModeDeclaration::slot_index(Symbol var) const {
  const std::string& n = var.name();
  if (n.size() < 3 || n[0] != '_' || n[1] != 'P') return slots.size();
  std::size_t i = 0;
  for (std::size_t k = 2; k < n.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(n[k]))) return slots.size();
    i = i * 10 + static_cast<std::size_t>(n[k] - '0');
  }
  return i < slots.size() ? i : slots.size();
}

std::optional<std::vector<Term>> ModeDeclaration::bind(const Literal& ground) const {
  if (ground.negated != pattern.negated) return std::nullopt;
  Substitution s;
  if (!match(pattern.atom, ground.atom, s)) return std::nullopt;
  std::vector<Term> out;
  out.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Term* value = s.lookup(slot_variable(i));
    if (!value) return std::nullopt;
    out.push_back(*value);
  }
  return out;
}

std::string ModeDeclaration::render(std::string_view keyword) const {
  return std::string(keyword) + "(" + to_string(render_template(pattern.atom, *this)) + ")";
}

const ModeDeclaration* ModeBias::head_mode_for(const Literal& head) const {
  for (const auto& m : heads)
    if (m.bind(head)) return &m;
  return nullptr;
}

std::string ModeBias::render() const {
  std::string out;
  for (const auto& m : heads) out += m.render("modeh") + "\n";
  for (const auto& m : bodies) out += m.render("modeb") + "\n";
  for (const auto& [type, values] : constants) {
    out += "constants(" + type.name() + ", [";
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + to_string(values[i]);
    out += "]).\n";
  }
  return out;
}

ModeBias parse_mode_bias(std::string_view text) {
  ModeBias bias;
  detail::Reader r(text);
  while (!r.at_end()) {
    const std::string keyword = r.read_name();
    if (keyword.empty()) r.fail(std::string("unexpected character '") + r.peek() + "'");
    r.expect("(");
    if (keyword == "modeh" || keyword == "modeb") {
      SlotCollector collector;
      r.set_term_hook(&read_placemarker, &collector);
      Literal pattern = r.read_literal();
      r.set_term_hook(nullptr, nullptr);
      r.expect(")");
      ModeDeclaration decl{std::move(pattern), std::move(collector.slots)};
      auto& target = keyword == "modeh" ? bias.heads : bias.bodies;
      if (std::find(target.begin(), target.end(), decl) == target.end())
        target.push_back(std::move(decl));
    } else if (keyword == "constants") {
      const std::string type = r.read_name();
      if (type.empty()) r.fail("expected a type name");
      r.expect(",");
      r.expect("[");
      auto& values = bias.constants[Symbol(type)];
      if (!r.try_consume("]")) {
        do {
          Term v = r.read_term();
          if (!v.is_constant()) r.fail("constants must be symbols or integers");
          if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
        } while (r.try_consume(","));
        r.expect("]");
      }
      r.expect(")");
    } else {
      r.fail("unknown declaration '" + keyword + "'");
    }
    (void)r.try_consume(".");
  }
  return bias;
}

}  // namespace evl
