#include "evl/learner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "evl/decision_log.hpp"
#include "evl/errors.hpp"
#include "evl/matching.hpp"

namespace evl {

double g_score(const ClauseStats& s, HeadKind kind) {
  const std::uint64_t other = kind == HeadKind::Initiation ? s.fp : s.fn;
  const std::uint64_t denom = s.tp + other;
  return denom == 0 ? 0.0 : static_cast<double>(s.tp) / static_cast<double>(denom);
}

double hoeffding_epsilon(double delta, std::uint64_t n) {
  if (n == 0) throw std::domain_error("insufficient observations");
  return std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
}

void LearnerConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
  if (depth < 1) throw ConfigError("depth must be at least 1");
  if (!(s_min >= 0.0 && s_min <= 1.0)) throw ConfigError("prune threshold must lie in [0,1]");
  if (max_bottom < 1) throw ConfigError("bottom clause cap must be at least 1");
}

namespace {

Clause assemble(const BottomClause& bottom, const std::vector<std::uint32_t>& from_bottom) {
  Clause c{bottom.head, {}};
  c.body.reserve(from_bottom.size());
  for (auto i : from_bottom) c.body.push_back(bottom.body[i]);
  return c;
}

// Literal spellings with variables blanked out; variants share this key.
std::vector<std::string> shape_key(const Clause& c) {
  std::vector<std::string> key;
  key.reserve(c.body.size());
  Substitution blank;
  for (auto v : c.variables()) blank.bind(v, Term::variable("_"));
  for (const auto& l : c.body) key.push_back(to_string(apply(l, blank)));
  std::sort(key.begin(), key.end());
  return key;
}

bool variants(const Clause& a, const Clause& b) {
  return a.body.size() == b.body.size() && theta_subsumes(a, b) && theta_subsumes(b, a);
}

const char* learner_name(HeadKind k) { return k == HeadKind::Initiation ? "init" : "term"; }

nlohmann::json counters(const ClauseStats& s) { return nlohmann::json::array({s.tp, s.fp, s.fn}); }

}  // namespace

LearnedClause make_learned_clause(std::shared_ptr<const BottomClause> bottom,
                                  std::vector<std::uint32_t> from_bottom, std::size_t depth,
                                  std::uint64_t id) {
  LearnedClause r;
  r.id = id;
  r.clause = assemble(*bottom, from_bottom);
  r.from_bottom = std::move(from_bottom);
  r.bottom = std::move(bottom);
  r.candidates = specializations(r, depth);
  return r;
}

std::vector<Candidate> specializations(const LearnedClause& r, std::size_t depth) {
  std::vector<Candidate> out;
  if (!r.bottom || depth == 0) return out;
  std::vector<std::uint32_t> free;
  for (std::uint32_t i = 0; i < r.bottom->body.size(); ++i)
    if (!std::binary_search(r.from_bottom.begin(), r.from_bottom.end(), i)) free.push_back(i);

  std::map<std::vector<std::string>, std::vector<std::size_t>> by_shape;
  std::vector<std::size_t> pick;
  auto emit = [&] {
    std::vector<std::uint32_t> idx = r.from_bottom;
    for (auto p : pick) idx.push_back(free[p]);
    std::sort(idx.begin(), idx.end());
    Clause c = assemble(*r.bottom, idx);
    if (theta_subsumes(c, r.clause)) return;  // equivalent to the parent
    auto& same = by_shape[shape_key(c)];
    for (auto j : same)
      if (variants(out[j].clause, c)) return;
    same.push_back(out.size());
    out.push_back(Candidate{std::move(c), std::move(idx), {}});
  };
  // Subsets in order of size, then lexicographically by bottom position.
  for (std::size_t k = 1; k <= std::min(depth, free.size()); ++k) {
    pick.resize(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      emit();
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == free.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

void update_clause_stats(LearnedClause& r, const GroundingContext& ctx) {
  // A candidate's body extends its parent's, so it can only fire where the
  // parent does; candidates are tested on the parent's firings alone.
  if (r.kind() == HeadKind::Initiation) {
    const auto fired = firing_fluents(r.clause, ctx, ctx.target());
    OutcomeDelta d;
    std::vector<bool> positive(fired.size());
    for (std::size_t i = 0; i < fired.size(); ++i) {
      positive[i] = ctx.holds_next(fired[i]);
      ++(positive[i] ? d.tp : d.fp);
    }
    r.stats.add(d);
    for (auto& c : r.candidates) {
      OutcomeDelta cd;
      for (std::size_t i = 0; i < fired.size(); ++i)
        if (fires(c.clause, ctx, fired[i])) ++(positive[i] ? cd.tp : cd.fp);
      c.stats.add(cd);
    }
  } else {
    std::uint64_t persisting = 0;
    std::vector<const Term*> terminated;
    for (const auto& f : ctx.holding_now()) {
      if (!ctx.holds_next(f)) continue;
      ++persisting;
      if (fires(r.clause, ctx, f)) terminated.push_back(&f);
    }
    r.stats.add({persisting - terminated.size(), 0, terminated.size()});
    for (auto& c : r.candidates) {
      std::uint64_t fn = 0;
      for (const Term* f : terminated)
        if (fires(c.clause, ctx, *f)) ++fn;
      c.stats.add({persisting - fn, 0, fn});
    }
  }
}

ExpansionDecision evaluate_expansion(const LearnedClause& r, double epsilon, double tau) {
  ExpansionDecision d;
  const HeadKind kind = r.kind();
  d.epsilon = epsilon;
  d.tau = tau;
  d.parent_stats = r.stats;
  d.g_parent = g_score(r.stats, kind);

  // Pool position 0 is r, position i+1 is candidate i.
  const std::size_t pool = r.candidates.size() + 1;
  auto stats_at = [&](std::size_t p) -> const ClauseStats& {
    return p == 0 ? r.stats : r.candidates[p - 1].stats;
  };
  std::vector<double> g(pool);
  for (std::size_t p = 0; p < pool; ++p) g[p] = g_score(stats_at(p), kind);

  std::size_t best = 0;
  for (std::size_t p = 1; p < pool; ++p)
    if (g[p] > g[best]) best = p;
  d.best_stats = stats_at(best);
  d.g_best = g[best];
  if (best != 0) d.best = best - 1;
  if (pool < 2) {
    d.second_stats = d.best_stats;
    d.g_second = d.g_best;
    return d;
  }
  std::size_t second = best == 0 ? 1 : 0;
  for (std::size_t p = 0; p < pool; ++p)
    if (p != best && g[p] > g[second]) second = p;
  d.second_stats = stats_at(second);
  d.g_second = g[second];

  d.hoeffding = d.g_best - d.g_second > epsilon;
  d.expand = best != 0 && d.g_best > d.g_parent && (d.hoeffding || epsilon < tau);
  return d;
}

LearnedClause try_expand_clause(const LearnedClause& r, const LearnerConfig& cfg, double tau) {
  const auto d = evaluate_expansion(r, hoeffding_epsilon(cfg.delta, r.stats.n), tau);
  if (!d.expand) return r;
  return make_learned_clause(r.bottom, r.candidates[*d.best].from_bottom, cfg.depth, r.id);
}

bool prune_condition(const LearnedClause& r, const LearnerConfig& cfg) {
  if (r.stats.n == 0 || r.stats.n < cfg.n_min) return false;
  return cfg.s_min - g_score(r.stats, r.kind()) > hoeffding_epsilon(cfg.delta, r.stats.n);
}

std::vector<LearnedClause> prune(std::vector<LearnedClause> theory, const LearnerConfig& cfg) {
  std::erase_if(theory, [&](const LearnedClause& r) { return prune_condition(r, cfg); });
  return theory;
}

namespace {

struct SeededBottom {
  Seed seed;
  std::shared_ptr<const BottomClause> bottom;
};

// Bottoms with a nonempty body, most body literals first, then by seed.
std::vector<SeededBottom> ranked_bottoms(const std::vector<Seed>& seeds, const GroundingContext& ctx,
                                         const ModeBias& bias, std::size_t max_body) {
  std::vector<SeededBottom> out;
  for (const auto& s : seeds) {
    auto bottom = variabilize(saturate(s, ctx, bias, max_body), bias);
    if (bottom.body.empty()) continue;
    out.push_back({s, std::make_shared<const BottomClause>(std::move(bottom))});
  }
  std::stable_sort(out.begin(), out.end(), [](const SeededBottom& a, const SeededBottom& b) {
    if (a.bottom->body.size() != b.bottom->body.size())
      return a.bottom->body.size() > b.bottom->body.size();
    return a.seed.head() < b.seed.head();
  });
  return out;
}

std::vector<Seed> seeds_of(const GroundingContext& ctx, HeadKind kind) {
  auto seeds = abduce_seeds(ctx);
  std::erase_if(seeds, [&](const Seed& s) { return s.kind != kind; });
  return seeds;
}

}  // namespace

std::optional<LearnedClause> start_new_clause(const GroundingContext& ctx, const ModeBias& bias,
                                              const LearnerConfig& cfg) {
  auto ranked = ranked_bottoms(seeds_of(ctx, cfg.kind), ctx, bias, cfg.max_bottom);
  if (ranked.empty()) return std::nullopt;
  return make_learned_clause(ranked.front().bottom, {}, cfg.depth);
}

Theory output_hypothesis(std::span<const LearnedClause> clauses, const LearnerConfig& cfg) {
  Theory t;
  for (const auto& r : clauses)
    if (r.stats.n >= cfg.n_min) t.clauses.push_back(r.clause);
  return t;
}

std::size_t approx_bytes(const Term& t) {
  std::size_t n = sizeof(Term);
  for (const auto& a : t.args()) n += approx_bytes(a);
  return n;
}

std::size_t approx_bytes(const Clause& c) {
  std::size_t n = sizeof(Clause) + approx_bytes(c.head.atom);
  for (const auto& l : c.body) n += approx_bytes(l.atom) + sizeof(bool);
  return n;
}

Learner::Learner(LearnerConfig cfg, std::shared_ptr<const ModeBias> bias, DecisionLog* log)
    : cfg_(cfg), bias_(std::move(bias)), log_(log) {
  cfg_.validate();
  if (log_)
    log_->write({{"type", "config"},
                 {"learner", learner_name(cfg_.kind)},
                 {"delta", cfg_.delta},
                 {"s_min", cfg_.s_min},
                 {"n_min", cfg_.n_min},
                 {"depth", cfg_.depth}});
}

void Learner::update_stats(const GroundingContext& ctx) {
  for (auto& r : clauses_) update_clause_stats(r, ctx);
}

std::vector<Seed> Learner::uncovered_seeds(const GroundingContext& ctx) const {
  auto seeds = seeds_of(ctx, cfg_.kind);
  std::erase_if(seeds, [&](const Seed& s) {
    return std::any_of(clauses_.begin(), clauses_.end(),
                       [&](const LearnedClause& r) { return fires(r.clause, ctx, s.fluent); });
  });
  return seeds;
}

bool Learner::expand_theory(const GroundingContext& ctx) {
  const auto seeds = uncovered_seeds(ctx);
  if (seeds.empty()) return false;
  for (auto& sb : ranked_bottoms(seeds, ctx, *bias_, cfg_.max_bottom)) {
    const Clause candidate = sb.bottom->as_clause();
    const bool redundant = std::any_of(clauses_.begin(), clauses_.end(), [&](const LearnedClause& r) {
      return theta_subsumes(r.bottom->as_clause(), candidate);
    });
    if (redundant) continue;
    auto r = make_learned_clause(sb.bottom, {}, cfg_.depth, next_id_++);
    if (log_)
      log_->write({{"type", "new_clause"},
                   {"learner", learner_name(cfg_.kind)},
                   {"clause", r.id},
                   {"seed", to_string(sb.seed.head())},
                   {"bottom_size", sb.bottom->body.size()}});
    clauses_.push_back(std::move(r));
    return true;
  }
  return false;
}

std::size_t Learner::expand_clauses() {
  nlohmann::json items = nlohmann::json::array();
  std::vector<nlohmann::json> events;
  std::size_t expanded = 0;
  for (auto& r : clauses_) {
    if (r.stats.n == 0) continue;
    const double eps = hoeffding_epsilon(cfg_.delta, r.stats.n);
    eps_sum_ += eps;
    ++eps_count_;
    items.push_back({r.id, r.stats.n});
    const auto d = evaluate_expansion(r, eps, tau());
    if (!d.expand) continue;

    const auto& chosen = r.candidates[*d.best];
    auto next = make_learned_clause(r.bottom, chosen.from_bottom, cfg_.depth, next_id_++);
    if (log_) {
      nlohmann::json added = nlohmann::json::array();
      for (auto i : chosen.from_bottom)
        if (!std::binary_search(r.from_bottom.begin(), r.from_bottom.end(), i))
          added.push_back(to_string(r.bottom->body[i]));
      events.push_back({{"type", "expand"},
                        {"learner", learner_name(cfg_.kind)},
                        {"clause", r.id},
                        {"new_clause", next.id},
                        {"n", r.stats.n},
                        {"attempt", eps_count_ - 1},
                        {"parent", counters(d.parent_stats)},
                        {"best", counters(d.best_stats)},
                        {"second", counters(d.second_stats)},
                        {"g_parent", d.g_parent},
                        {"g_best", d.g_best},
                        {"g_second", d.g_second},
                        {"epsilon", d.epsilon},
                        {"tau", d.tau},
                        {"rule", d.hoeffding ? "hoeffding" : "tie"},
                        {"added", std::move(added)}});
    }
    r = std::move(next);
    ++expanded;
  }
  if (log_ && !items.empty()) {
    log_->write({{"type", "attempts"}, {"learner", learner_name(cfg_.kind)}, {"items", std::move(items)}});
    for (const auto& e : events) log_->write(e);
  }
  return expanded;
}

std::size_t Learner::prune_clauses() {
  std::size_t removed = 0;
  std::erase_if(clauses_, [&](const LearnedClause& r) {
    if (!prune_condition(r, cfg_)) return false;
    if (log_)
      log_->write({{"type", "prune"},
                   {"learner", learner_name(cfg_.kind)},
                   {"clause", r.id},
                   {"n", r.stats.n},
                   {"tp", r.stats.tp},
                   {"fp", r.stats.fp},
                   {"fn", r.stats.fn},
                   {"g", g_score(r.stats, cfg_.kind)},
                   {"s_min", cfg_.s_min},
                   {"epsilon", hoeffding_epsilon(cfg_.delta, r.stats.n)}});
    ++removed;
    return true;
  });
  return removed;
}

std::size_t Learner::state_bytes() const {
  std::size_t n = sizeof(*this);
  std::unordered_set<const BottomClause*> bottoms;
  for (const auto& r : clauses_) {
    n += sizeof(LearnedClause) + approx_bytes(r.clause) + r.from_bottom.size() * sizeof(std::uint32_t);
    for (const auto& c : r.candidates)
      n += sizeof(Candidate) + approx_bytes(c.clause) + c.from_bottom.size() * sizeof(std::uint32_t);
    if (r.bottom && bottoms.insert(r.bottom.get()).second)
      n += sizeof(BottomClause) + approx_bytes(r.bottom->as_clause()) +
           r.bottom->body_modes.size() * sizeof(std::size_t);
  }
  return n;
}

}  // namespace evl
