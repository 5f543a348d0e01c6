#include "evl/dispatcher.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "evl/decision_log.hpp"

namespace evl {

Action dispatch(HeadKind learner, Failure failure) {
  const bool init = learner == HeadKind::Initiation;
  const bool fp = failure == Failure::FP;
  return init == fp ? Action::ClauseExpansion : Action::TheoryExpansion;
}

std::vector<FailureKind> detect_failures(const Learner& learner, const GroundingContext& ctx) {
  const HeadKind kind = learner.config().kind;
  const auto& clauses = learner.clauses();
  auto any_fires = [&](const Term& f) {
    return std::any_of(clauses.begin(), clauses.end(),
                       [&](const LearnedClause& r) { return fires(r.clause, ctx, f); });
  };
  bool fp = false, fn = false;
  if (kind == HeadKind::Initiation) {
    for (const auto& r : clauses) {
      for (const auto& f : firing_fluents(r.clause, ctx, ctx.target()))
        if (!ctx.holds_next(f)) {
          fp = true;
          break;
        }
      if (fp) break;
    }
    for (const auto& f : ctx.holding_next())
      if (!ctx.holds_now(f) && !any_fires(f)) {
        fn = true;
        break;
      }
  } else {
    for (const auto& f : ctx.holding_now()) {
      if (ctx.holds_next(f)) {
        fn = fn || any_fires(f);
      } else {
        fp = fp || !any_fires(f);
      }
    }
  }
  std::vector<FailureKind> out;
  if (fp) out.push_back({kind, Failure::FP});
  if (fn) out.push_back({kind, Failure::FN});
  return out;
}

StepOutcome learner_step(Learner& learner, const GroundingContext& ctx) {
  StepOutcome out;
  learner.update_stats(ctx);
  out.failures = detect_failures(learner, ctx);
  const bool wants_theory = std::any_of(out.failures.begin(), out.failures.end(), [](const FailureKind& f) {
    return dispatch(f.learner, f.failure) == Action::TheoryExpansion;
  });
  if (wants_theory) out.theory_expanded = learner.expand_theory(ctx);
  if (!out.theory_expanded) out.clause_expansions = learner.expand_clauses();
  out.pruned = learner.prune_clauses();
  learner.mark_processed();
  return out;
}

LearnerConfig OnlineConfig::learner(HeadKind kind) const {
  LearnerConfig c;
  c.kind = kind;
  c.delta = delta;
  c.depth = depth;
  c.s_min = s_min;
  c.n_min = n_min;
  c.max_bottom = max_bottom;
  return c;
}

Theory merge_output(const Theory& init, const Theory& term) {
  Theory t = init;
  t.clauses.insert(t.clauses.end(), term.clauses.begin(), term.clauses.end());
  return t;
}

namespace {

using ContextPtr = std::shared_ptr<const GroundingContext>;

template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(std::max<std::size_t>(capacity, 1)) {}

  void push(T item) {
    std::unique_lock lock(mutex_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_; });
    items_.push_back(std::move(item));
    not_empty_.notify_one();
  }

  void close() {
    std::lock_guard lock(mutex_);
    closed_ = true;
    not_empty_.notify_all();
  }

  /// Empty optional once closed and drained.
  std::optional<T> pop() {
    std::unique_lock lock(mutex_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return item;
  }

 private:
  std::size_t capacity_;
  std::deque<T> items_;
  bool closed_ = false;
  std::mutex mutex_;
  std::condition_variable not_empty_, not_full_;
};

struct Worker {
  explicit Worker(Learner* l) : learner(l) {}
  Learner* learner;
  double seconds = 0;
  std::uint64_t theory_expansions = 0, clause_expansions = 0, prunes = 0;
  std::exception_ptr error;
};

std::mutex progress_mutex;

void process(Worker& w, const GroundingContext& ctx, const OnlineConfig& cfg) {
  if (w.error) return;
  try {
    const auto start = std::chrono::steady_clock::now();
    const auto step = learner_step(*w.learner, ctx);
    if (cfg.track_memory) w.learner->track_peak();
    w.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    w.theory_expansions += step.theory_expanded ? 1 : 0;
    w.clause_expansions += step.clause_expansions;
    w.prunes += step.pruned;
    const auto done = w.learner->processed();
    if (cfg.progress && cfg.progress_every && done % cfg.progress_every == 0) {
      std::lock_guard lock(progress_mutex);
      *cfg.progress << "status learner=" << (w.learner->config().kind == HeadKind::Initiation ? "init" : "term")
                    << " processed=" << done << " clauses=" << w.learner->clauses().size()
                    << " theory_size=" << w.learner->output().size()
                    << " mean_epsilon=" << w.learner->tau() << '\n';
    }
  } catch (...) {
    w.error = std::current_exception();
  }
}

}  // namespace

OnlineResult run_online(InterpretationSource& stream, std::shared_ptr<const ModeBias> bias,
                        const Target& target, const OnlineConfig& cfg) {
  OnlineResult result;
  result.init = std::make_unique<Learner>(cfg.learner(HeadKind::Initiation), bias, cfg.log);
  result.term = std::make_unique<Learner>(cfg.learner(HeadKind::Termination), bias, cfg.log);
  Worker workers[2] = {Worker(result.init.get()), Worker(result.term.get())};
  ContextBuilder builder(target, SpatialVocabulary::from_bias(*bias));
  std::exception_ptr source_error;

  if (!cfg.concurrent) {
    try {
      while (auto interp = stream.next()) {
        const auto ctx = builder.build(*interp);
        ++result.interpretations;
        for (auto& w : workers) process(w, *ctx, cfg);
      }
    } catch (...) {
      source_error = std::current_exception();
    }
  } else {
    BoundedQueue<ContextPtr> queues[2] = {BoundedQueue<ContextPtr>(cfg.queue_capacity),
                                          BoundedQueue<ContextPtr>(cfg.queue_capacity)};
    std::thread threads[2];
    for (int i = 0; i < 2; ++i)
      threads[i] = std::thread([&, i] {
        while (auto ctx = queues[i].pop()) process(workers[i], **ctx, cfg);
      });
    try {
      while (auto interp = stream.next()) {
        auto ctx = builder.build(*interp);
        ++result.interpretations;
        queues[0].push(ctx);
        queues[1].push(std::move(ctx));
      }
    } catch (...) {
      source_error = std::current_exception();
    }
    for (auto& q : queues) q.close();
    for (auto& t : threads) t.join();
  }

  if (source_error) std::rethrow_exception(source_error);
  for (auto& w : workers)
    if (w.error) std::rethrow_exception(w.error);

  result.init_seconds = workers[0].seconds;
  result.term_seconds = workers[1].seconds;
  for (int i = 0; i < 2; ++i) {
    result.theory_expansions[i] = workers[i].theory_expansions;
    result.clause_expansions[i] = workers[i].clause_expansions;
    result.prunes[i] = workers[i].prunes;
  }
  return result;
}

}  // namespace evl
