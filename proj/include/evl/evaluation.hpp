#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include "evl/dispatcher.hpp"
#include "evl/event_calculus.hpp"

namespace evl {

/// Micro-averaged recognition quality of a theory on a stream.
struct Metrics {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t theory_size = 0;
  double train_time = 0;

  /// Ratios from the counts (0 on a zero denominator).
  static Metrics from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn);

  /// Keys: tp, fp, fn, precision, recall, f1, theory_size, train_time.
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Chained recognition with `theory` over the stream, comparing the predicted
/// fluents at t+1 of every window with the annotation at t+1.
[[nodiscard]] Metrics evaluate(const Theory& theory, InterpretationSource& stream, const Target& target);
[[nodiscard]] Metrics evaluate(const Theory& theory, std::span<const Interpretation> stream,
                               const Target& target);

/// Maximal runs of windows with consecutive t.
[[nodiscard]] std::vector<std::vector<Interpretation>> split_episodes(std::vector<Interpretation> stream);

struct CrossValidation {
  std::vector<Metrics> folds;
  /// Counts pooled over all folds, train_time and theory_size averaged.
  Metrics pooled;
};

/// k contiguous blocks of whole episodes; each fold trains on the other
/// blocks and tests on its own. Throws ConfigError for k < 2 or k greater
/// than the episode count.
[[nodiscard]] CrossValidation cross_validate(const std::vector<std::vector<Interpretation>>& episodes,
                                             std::size_t k, std::shared_ptr<const ModeBias> bias,
                                             const Target& target, const OnlineConfig& cfg);

}  // namespace evl
