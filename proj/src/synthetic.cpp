#include "evl/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "evl/errors.hpp"

namespace evl {

namespace {

constexpr int kWalking = 0, kActive = 1, kInactive = 2;
constexpr double kJoinProbability = 0.003;
constexpr double kPartingDistance = 40;
constexpr int kMaxParting = 20;

double wrap_degrees(double d) {
  d = std::fmod(d, 360.0);
  return d < 0 ? d + 360.0 : d;
}

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

void GeneratorConfig::validate() const {
  if (entities < 2) throw ConfigError("the generator needs at least 2 entities");
  if (length < 0) throw ConfigError("length must be non-negative");
  if (episodes < 1) throw ConfigError("at least one episode is required");
  if (gap < 1) throw ConfigError("episode gap must be at least 1");
  if (!(noise.flip >= 0 && noise.flip <= 1)) throw ConfigError("flip probability must lie in [0,1]");
  if (!(noise.drop >= 0 && noise.drop <= 1)) throw ConfigError("drop probability must lie in [0,1]");
  if (!(arena > 0)) throw ConfigError("arena size must be positive");
}

Target target_of(const Theory& theory) {
  for (const auto& c : theory.clauses)
    if (head_kind_of(c.head) && c.head.args()[0].is_compound())
      return Target::named(c.head.args()[0].name().name(), c.head.args()[0].arity());
  throw ConfigError("ground-truth theory has no initiatedAt/terminatedAt clause");
}

SyntheticSource::SyntheticSource(Theory ground_truth, GeneratorConfig cfg)
    : gt_(std::move(ground_truth)),
      cfg_(cfg),
      target_(target_of(gt_)),
      vocabulary_(SpatialVocabulary::from_clauses(gt_.clauses)),
      sim_rng_(cfg.seed),
      noise_rng_(cfg.noise.seed ^ 0x9e3779b97f4a7c15ULL) {
  cfg_.validate();
  for (std::size_t i = 0; i < cfg_.entities; ++i) ids_.push_back(Term::symbol("id" + std::to_string(i + 1)));
  agents_.resize(cfg_.entities);
}

void SyntheticSource::start_episode() {
  std::uniform_real_distribution<double> pos(0.0, cfg_.arena), angle(0.0, 360.0), unit(0.0, 1.0);
  for (auto& a : agents_) {
    a = Agent{};
    a.x = pos(sim_rng_);
    a.y = pos(sim_rng_);
    a.heading = angle(sim_rng_);
    const double u = unit(sim_rng_);
    a.state = u < 0.6 ? kWalking : u < 0.8 ? kActive : kInactive;
  }
  state_.clear();
  const auto base = cfg_.length / static_cast<std::int64_t>(cfg_.episodes);
  const auto extra = cfg_.length % static_cast<std::int64_t>(cfg_.episodes);
  const auto len = base + (static_cast<std::int64_t>(episode_) < extra ? 1 : 0);
  if (episode_ > 0) time_ += cfg_.gap;
  episode_end_ = time_ + len;
  ++episode_;
}

void SyntheticSource::advance() {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(sim_rng_); };
  const double arena = cfg_.arena;

  // Leaders and free agents first, followers after their leaders have moved.
  for (auto& a : agents_) {
    if (a.leader >= 0) continue;
    if (a.leading) {
      if (--a.ticks <= 0) {
        a.leading = false;
        a.state = kInactive;
      }
    } else if (a.former >= 0) {
      // Walk straight away from the former leader, then stop once clear.
      const Agent& l = agents_[static_cast<std::size_t>(a.former)];
      if (std::hypot(a.x - l.x, a.y - l.y) > kPartingDistance || ++a.parting > kMaxParting) {
        a.former = -1;
        a.state = kInactive;
      } else {
        a.heading = wrap_degrees(std::atan2(a.y - l.y, a.x - l.x) * 180.0 / std::numbers::pi);
      }
    } else {
      const double u = unit(sim_rng_);
      switch (a.state) {
        case kWalking:
          a.state = u < 0.02 ? kActive : u < 0.04 ? kInactive : kWalking;
          break;
        case kActive:
          a.state = u < 0.05 ? kWalking : u < 0.08 ? kInactive : kActive;
          break;
        default:
          a.state = u < 0.04 ? kWalking : u < 0.06 ? kActive : kInactive;
          break;
      }
    }
    if (a.state != kWalking) continue;
    if (a.former < 0) a.heading = wrap_degrees(a.heading + uniform(-15.0, 15.0));
    const double speed = uniform(3.0, 5.0);
    a.x += speed * std::cos(radians(a.heading));
    a.y += speed * std::sin(radians(a.heading));
    if (a.x < 0 || a.x > arena) {
      a.x = a.x < 0 ? -a.x : 2 * arena - a.x;
      a.heading = wrap_degrees(180.0 - a.heading);
    }
    if (a.y < 0 || a.y > arena) {
      a.y = a.y < 0 ? -a.y : 2 * arena - a.y;
      a.heading = wrap_degrees(-a.heading);
    }
  }

  for (auto& a : agents_) {
    if (a.leader < 0) continue;
    const Agent& l = agents_[static_cast<std::size_t>(a.leader)];
    if (l.state != kWalking) {
      // The leader stopped: the pair splits and the follower walks off.
      a.former = a.leader;
      a.leader = -1;
      a.parting = 0;
      continue;
    }
    a.x = l.x + a.offset_x;
    a.y = l.y + a.offset_y;
    a.heading = wrap_degrees(l.heading + uniform(-10.0, 10.0));
  }

  // Free walkers occasionally fall in step with another free walker.
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    Agent& a = agents_[i];
    if (a.leader >= 0 || a.leading || a.former >= 0 || a.state != kWalking || unit(sim_rng_) >= kJoinProbability) continue;
    std::vector<std::size_t> options;
    for (std::size_t j = 0; j < agents_.size(); ++j)
      if (j != i && agents_[j].leader < 0 && agents_[j].former < 0 && agents_[j].state == kWalking) options.push_back(j);
    if (options.empty()) continue;
    const std::size_t j = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(sim_rng_)];
    Agent& l = agents_[j];
    const double r = uniform(8.0, 18.0), phi = uniform(0.0, 360.0);
    a.leader = static_cast<int>(j);
    a.offset_x = r * std::cos(radians(phi));
    a.offset_y = r * std::sin(radians(phi));
    a.x = l.x + a.offset_x;
    a.y = l.y + a.offset_y;
    a.heading = wrap_degrees(l.heading + uniform(-10.0, 10.0));
    if (!l.leading) {
      l.leading = true;
      l.ticks = 15 + static_cast<int>(uniform(0.0, 30.0));
    }
  }
}

std::vector<Literal> SyntheticSource::narrative() const {
  static const char* names[] = {"walking", "active", "inactive"};
  std::vector<Literal> out;
  out.reserve(agents_.size() * 3);
  const Term t = Term::integer(time_);
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const Agent& a = agents_[i];
    const Term& id = ids_[i];
    out.emplace_back(Term::compound("happensAt", {Term::compound(names[a.state], {id}), t}));
    out.emplace_back(Term::compound(
        "holdsAt", {Term::compound("coords", {id, Term::integer(std::lround(a.x)), Term::integer(std::lround(a.y))}), t}));
    out.emplace_back(Term::compound(
        "holdsAt", {Term::compound("direction", {id, Term::integer(std::lround(a.heading) % 360)}), t}));
  }
  return out;
}

std::optional<Frame> SyntheticSource::next_frame() {
  if (emitted_ >= cfg_.length) return std::nullopt;
  if (episode_ == 0 || time_ >= episode_end_) start_episode();

  Frame frame;
  frame.time = time_;
  const auto clean = narrative();

  // Ground truth at time_+1 from the clean narrative at time_.
  Interpretation window;
  window.t = time_;
  window.narrative = clean;
  for (const auto& f : state_) window.annotation.push_back(holds_at(f, time_));
  const GroundingContext ctx(window, target_, vocabulary_);
  auto next = next_state(gt_.clauses, ctx, state_);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Term> annotated;
  if (cfg_.noise.flip > 0 && target_.pattern().arity() == 2) {
    for (const auto& a : ids_)
      for (const auto& b : ids_) {
        if (a == b) continue;
        Term f = Term::compound(target_.functor(), {a, b});
        const bool holds = std::binary_search(state_.begin(), state_.end(), f);
        if (holds != (unit(noise_rng_) < cfg_.noise.flip)) annotated.push_back(std::move(f));
      }
  } else {
    annotated = state_;
  }
  for (const auto& l : clean)
    if (cfg_.noise.drop <= 0 || unit(noise_rng_) >= cfg_.noise.drop) frame.facts.push_back(l);
  for (const auto& f : annotated) frame.facts.push_back(holds_at(f, time_));

  state_ = std::move(next);
  advance();
  ++time_;
  ++emitted_;
  return frame;
}

void write_facts(std::ostream& out, FrameSource& frames) {
  while (auto f = frames.next_frame())
    for (const auto& l : f->facts) out << to_string(l) << ".\n";
}

}  // namespace evl
