#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "evl/event_calculus.hpp"

namespace evl {

/// All facts of one time point.
struct Frame {
  std::int64_t time = 0;
  std::vector<Literal> facts;
};

class FrameSource {
 public:
  virtual ~FrameSource() = default;
  /// Frames in strictly increasing time order.
  virtual std::optional<Frame> next_frame() = 0;
};

/// Time argument of a fact: its last argument, which must be an integer.
[[nodiscard]] std::optional<std::int64_t> fact_time(const Literal& fact);

/// Reads `atom.` lines (`%` comments, blank lines ignored) and groups them
/// into frames. Facts may arrive out of time order by up to `skew` time
/// points; a fact older than that raises StreamOrderError. Parse errors are
/// ParseError with the line number of the input.
class FactStreamReader final : public FrameSource {
 public:
  explicit FactStreamReader(std::istream& in, std::int64_t skew = 2) : in_(in), skew_(skew) {}

  std::optional<Frame> next_frame() override;

 private:
  std::istream& in_;
  std::int64_t skew_;
  std::size_t line_no_ = 0;
  bool eof_ = false;
  std::map<std::int64_t, std::vector<Literal>> pending_;
  std::optional<std::int64_t> max_time_;
  std::optional<std::int64_t> last_emitted_;
};

/// Turns consecutive frames (t, t+1) into interpretations; a missing time
/// point ends an episode. holdsAt facts over target fluents become the
/// annotation, everything else the narrative.
class Windower final : public InterpretationSource {
 public:
  Windower(FrameSource& frames, Target target) : frames_(frames), target_(std::move(target)) {}

  std::optional<Interpretation> next() override;

 private:
  FrameSource& frames_;
  Target target_;
  std::optional<Frame> previous_;
  std::uint64_t next_id_ = 0;
};

/// Every interpretation of a fact stream.
[[nodiscard]] std::vector<Interpretation> read_stream(std::istream& in, const Target& target);
[[nodiscard]] std::vector<Interpretation> read_stream_text(std::string_view text, const Target& target);

/// Replays a fixed list of frames.
class VectorFrameSource final : public FrameSource {
 public:
  explicit VectorFrameSource(std::vector<Frame> frames) : frames_(std::move(frames)) {}
  std::optional<Frame> next_frame() override {
    if (pos_ >= frames_.size()) return std::nullopt;
    return frames_[pos_++];
  }

 private:
  std::vector<Frame> frames_;
  std::size_t pos_ = 0;
};

/// `% size: N` followed by one clause per line.
void write_theory(std::ostream& out, const Theory& theory);
[[nodiscard]] Theory parse_theory(std::string_view text);
/// Literal count, heads included.
[[nodiscard]] std::size_t theory_size(const Theory& theory);

/// Target declared by the bias's modeh for `functor`, or functor/arity from
/// `fallback_arity` when the bias has none.
[[nodiscard]] Target target_from_heads(std::string_view functor, std::span<const Literal> heads,
                                       std::size_t fallback_arity = 2);

}  // namespace evl
