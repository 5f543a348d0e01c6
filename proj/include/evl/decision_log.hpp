#pragma once

#include <cstddef>
#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

namespace evl {

/// Line-delimited JSON record of learner decisions, shared by both learners.
///
/// Record types (field `type`):
///  - `config`: learner, delta, s_min, n_min, depth
///  - `attempts`: learner, items = [[clause id, n], ...], one ε per item, in order
///  - `expand`: learner, clause, new_clause, n, attempt (index of its ε in the
///    learner's sequence), parent/best/second = [tp,fp,fn], g_parent, g_best,
///    g_second, epsilon, tau, rule ("hoeffding" or "tie"), added literals
///  - `new_clause`: learner, clause, seed, bottom_size
///  - `prune`: learner, clause, n, tp, fp, fn, g, s_min, epsilon
class DecisionLog {
 public:
  explicit DecisionLog(std::ostream& out) : out_(&out) {}

  /// Thread-safe; writes one line.
  void write(const nlohmann::json& record);

 private:
  std::ostream* out_;
  std::mutex mutex_;
};

struct AuditReport {
  std::size_t records = 0;
  std::size_t attempts = 0;
  std::size_t expansions = 0;
  std::size_t prunes = 0;
  std::vector<std::string> violations;

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Replays a decision log: recomputes every ε from δ and n, τ as the running
/// mean of the learner's ε sequence, and G from the logged counters, then
/// checks each expansion and prune against its rule with tolerance `tol`.
[[nodiscard]] AuditReport audit_log(std::istream& in, double tol = 1e-9);

}  // namespace evl
