#include "evl/stream_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "evl/errors.hpp"
#include "evl/parse.hpp"

namespace evl {

std::optional<std::int64_t> fact_time(const Literal& fact) {
  if (fact.arity() == 0) return std::nullopt;
  const Term& last = fact.args().back();
  if (last.kind() != Term::Kind::Integer) return std::nullopt;
  return last.value();
}

std::optional<Frame> FactStreamReader::next_frame() {
  while (true) {
    if (!pending_.empty() && (eof_ || *max_time_ - pending_.begin()->first > skew_)) {
      auto node = pending_.extract(pending_.begin());
      Frame f{node.key(), std::move(node.mapped())};
      std::sort(f.facts.begin(), f.facts.end());
      f.facts.erase(std::unique(f.facts.begin(), f.facts.end()), f.facts.end());
      last_emitted_ = f.time;
      return f;
    }
    if (eof_) return std::nullopt;

    std::string line;
    if (!std::getline(in_, line)) {
      eof_ = true;
      continue;
    }
    ++line_no_;
    if (auto pct = line.find('%'); pct != std::string::npos) line.erase(pct);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;

    Literal fact;
    try {
      fact = parse_atom(line);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no_, e.column());
    }
    const auto time = fact_time(fact);
    if (!fact.is_ground() || !time)
      throw ParseError("expected a ground fact whose last argument is an integer time", line_no_, first + 1);
    if (last_emitted_ && *time <= *last_emitted_)
      throw StreamOrderError("line " + std::to_string(line_no_) + ": fact for time " + std::to_string(*time) +
                             " arrives after time " + std::to_string(*last_emitted_) + " was closed");
    pending_[*time].push_back(std::move(fact));
    max_time_ = max_time_ ? std::max(*max_time_, *time) : *time;
  }
}

std::optional<Interpretation> Windower::next() {
  static const Symbol holds_at("holdsAt");
  while (auto frame = frames_.next_frame()) {
    if (previous_ && previous_->time + 1 == frame->time) {
      Interpretation interp;
      interp.id = next_id_++;
      interp.t = previous_->time;
      for (const Frame* f : {&*previous_, &*frame})
        for (const auto& l : f->facts) {
          const bool annotation = l.predicate() == holds_at && l.arity() == 2 && !l.negated &&
                                  target_.matches(l.args()[0]);
          (annotation ? interp.annotation : interp.narrative).push_back(l);
        }
      previous_ = std::move(frame);
      return interp;
    }
    previous_ = std::move(frame);
  }
  return std::nullopt;
}

std::vector<Interpretation> read_stream(std::istream& in, const Target& target) {
  FactStreamReader reader(in);
  Windower windows(reader, target);
  std::vector<Interpretation> out;
  while (auto i = windows.next()) out.push_back(std::move(*i));
  return out;
}

std::vector<Interpretation> read_stream_text(std::string_view text, const Target& target) {
  std::istringstream in{std::string(text)};
  return read_stream(in, target);
}

std::size_t theory_size(const Theory& theory) { return theory.size(); }

void write_theory(std::ostream& out, const Theory& theory) {
  out << "% size: " << theory_size(theory) << '\n';
  for (const auto& c : theory.clauses) out << to_string(c) << '\n';
}

Theory parse_theory(std::string_view text) { return Theory{parse_program(text)}; }

Target target_from_heads(std::string_view functor, std::span<const Literal> heads,
                         std::size_t fallback_arity) {
  const Symbol name(functor);
  for (const auto& h : heads) {
    if (h.arity() == 0) continue;
    const Term& fluent = h.args()[0];
    if (fluent.name() == name && !fluent.is_variable()) return Target::named(functor, fluent.arity());
  }
  return Target::named(functor, fallback_arity);
}

}  // namespace evl
