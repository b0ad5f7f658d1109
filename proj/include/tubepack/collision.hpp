#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tubepack/geometry.hpp"
#include "tubepack/tube.hpp"

namespace tubepack {
// Collision test on a single frame: the overlap meets the threshold. Touching or disjoint boxes
// Eq. (3) on a single frame: the overlap meets the threshold. Touching or disjoint boxes
// (zero area) never collide, also when the threshold is zero.
inline bool is_colliding_area(double area, double a_thresh) {
  return area > 0.0 && area >= a_thresh;
}

// Smallest synopsis frame at which the two placed tubes collide, or nullopt.
std::optional<int> tubes_collide(const Tube& a, int start_a, const Tube& b, int start_b,
                                 double a_thresh, const FrameGeometry& geom);

struct CollisionPair {
  TubeId id_a;  // id_a < id_b
  TubeId id_b;
  int first_offending_frame = 0;
  double max_overlap_area = 0.0;  // over all shared frames

  bool operator==(const CollisionPair&) const = default;
};

struct CollisionCount {
  int count = 0;
  std::vector<CollisionPair> pairs;  // sorted by (id_a, id_b)
};

// Closed synopsis life interval of one tube.
struct LifeInterval {
  int first = 0;
  int last = 0;
};

// Sort-and-sweep index over life intervals; enumerates the index pairs whose intervals share
// at least one frame.
class TemporalIndex {
 public:
  explicit TemporalIndex(std::vector<LifeInterval> intervals);

  // Pairs (i, j) with i < j, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs() const;

  std::size_t size() const { return intervals_.size(); }

 private:
  std::vector<LifeInterval> intervals_;
  std::vector<std::size_t> by_first_;
};

// Life intervals of the tubes under the state, in tube order. Throws ValidationError if a
// tube has no placement.
TemporalIndex build_temporal_index(std::span<const Tube> tubes, const SynopsisState& state);

// Number of unordered tube pairs that collide at some shared synopsis frame.
CollisionCount count_collisions(std::span<const Tube> tubes, const SynopsisState& state,
                                double a_thresh, const FrameGeometry& geom);

// Per-pair detail used by count_collisions and the report: witness frame plus the largest and
// summed per-frame overlap over all shared frames.
struct PairOverlap {
  std::optional<int> first_offending_frame;
  double max_overlap_area = 0.0;
  double total_overlap_area = 0.0;
};

PairOverlap pair_overlap(const Tube& a, int start_a, const Tube& b, int start_b, double a_thresh,
                         const FrameGeometry& geom);

}  // namespace tubepack
