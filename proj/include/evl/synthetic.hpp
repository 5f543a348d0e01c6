#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "evl/event_calculus.hpp"
#include "evl/stream_io.hpp"

namespace evl {

struct NoiseSpec {
  /// Probability of flipping each target fluent's annotated truth value.
  double flip = 0.0;
  /// Probability of dropping each narrative atom.
  double drop = 0.0;
  std::uint64_t seed = 0;
};

struct GeneratorConfig {
  std::size_t entities = 4;
  /// Total number of time points over all episodes.
  std::int64_t length = 1000;
  std::size_t episodes = 1;
  /// Missing time points between episodes.
  std::int64_t gap = 5;
  std::uint64_t seed = 1;
  NoiseSpec noise;
  double arena = 1500.0;

  void validate() const;
};

/// Lazily simulated walking/active/inactive trajectories of entities id1..idN
/// in a square arena, including pairs that walk together for a while. Each
/// frame at time t holds, per entity, happensAt(<state>(id),t),
/// holdsAt(coords(id,X,Y),t) and holdsAt(direction(id,D),t), followed by the
/// annotation holdsAt(F,t) for the target fluents that the ground-truth
/// theory derives by full EC inference on the noise-free narrative. Noise is
/// applied afterwards from its own random stream: annotation flips over
/// target(a,b) for ordered distinct entity pairs, then narrative drops.
class SyntheticSource final : public FrameSource {
 public:
  SyntheticSource(Theory ground_truth, GeneratorConfig cfg);

  std::optional<Frame> next_frame() override;

  [[nodiscard]] const Target& target() const noexcept { return target_; }

 private:
  struct Agent {
    double x = 0, y = 0, heading = 0;
    int state = 0;  // 0 walking, 1 active, 2 inactive
    int leader = -1;
    double offset_x = 0, offset_y = 0;  // position relative to the leader
    int ticks = 0;
    int former = -1;  // leader being walked away from after a split
    int parting = 0;
    bool leading = false;
  };

  void start_episode();
  void advance();
  [[nodiscard]] std::vector<Literal> narrative() const;

  Theory gt_;
  GeneratorConfig cfg_;
  Target target_;
  SpatialVocabulary vocabulary_;
  std::vector<Term> ids_;
  std::mt19937_64 sim_rng_;
  std::mt19937_64 noise_rng_;
  std::vector<Agent> agents_;
  std::vector<Term> state_;  // ground-truth fluents holding at the current time
  std::int64_t emitted_ = 0;
  std::int64_t time_ = 0;
  std::int64_t episode_end_ = 0;
  std::size_t episode_ = 0;
};

/// Writes every frame as `atom.` lines.
void write_facts(std::ostream& out, FrameSource& frames);

/// Target named by the fluent in the first initiatedAt/terminatedAt head.
[[nodiscard]] Target target_of(const Theory& theory);

}  // namespace evl
