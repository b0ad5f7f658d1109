#include "tubepack/collision.hpp"

#include <algorithm>
#include <numeric>

#include "tubepack/errors.hpp"

namespace tubepack {
namespace {

struct YExtent {
  double lo = 0.0;
  double hi = 0.0;
};

YExtent y_extent(const Tube& tube) {
  YExtent e{tube.boxes.front().y_min, tube.boxes.front().y_min + tube.boxes.front().height};
  for (const BoundingBox& b : tube.boxes) {
    e.lo = std::min(e.lo, b.y_min);
    e.hi = std::max(e.hi, b.y_min + b.height);
  }
  return e;
}

bool y_disjoint(const YExtent& a, const YExtent& b) { return a.hi <= b.lo || b.hi <= a.lo; }

}  // namespace

PairOverlap pair_overlap(const Tube& a, int start_a, const Tube& b, int start_b, double a_thresh,
                         const FrameGeometry& geom) {
  PairOverlap out;
  const int first = std::max(start_a, start_b);
  const int last = std::min(start_a + a.duration() - 1, start_b + b.duration() - 1);
  for (int t = first; t <= last; ++t) {
    const double area = box_overlap_area(a.boxes[static_cast<std::size_t>(t - start_a)],
                                         b.boxes[static_cast<std::size_t>(t - start_b)], geom);
    out.max_overlap_area = std::max(out.max_overlap_area, area);
    out.total_overlap_area += area;
    if (!out.first_offending_frame && is_colliding_area(area, a_thresh)) {
      out.first_offending_frame = t;
    }
  }
  return out;
}

std::optional<int> tubes_collide(const Tube& a, int start_a, const Tube& b, int start_b,
                                 double a_thresh, const FrameGeometry& geom) {
  const int first = std::max(start_a, start_b);
  const int last = std::min(start_a + a.duration() - 1, start_b + b.duration() - 1);
  for (int t = first; t <= last; ++t) {
    const double area = box_overlap_area(a.boxes[static_cast<std::size_t>(t - start_a)],
                                         b.boxes[static_cast<std::size_t>(t - start_b)], geom);
    if (is_colliding_area(area, a_thresh)) return t;
  }
  return std::nullopt;
}

TemporalIndex::TemporalIndex(std::vector<LifeInterval> intervals)
    : intervals_(std::move(intervals)), by_first_(intervals_.size()) {
  std::iota(by_first_.begin(), by_first_.end(), std::size_t{0});
  std::sort(by_first_.begin(), by_first_.end(), [&](std::size_t x, std::size_t y) {
    if (intervals_[x].first != intervals_[y].first) {
      return intervals_[x].first < intervals_[y].first;
    }
    return x < y;
  });
}

std::vector<std::pair<std::size_t, std::size_t>> TemporalIndex::candidate_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> active;
  for (std::size_t idx : by_first_) {
    const int first = intervals_[idx].first;
    std::erase_if(active, [&](std::size_t j) { return intervals_[j].last < first; });
    for (std::size_t j : active) pairs.emplace_back(std::min(idx, j), std::max(idx, j));
    active.push_back(idx);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

TemporalIndex build_temporal_index(std::span<const Tube> tubes, const SynopsisState& state) {
  std::vector<LifeInterval> intervals;
  intervals.reserve(tubes.size());
  for (const Tube& tube : tubes) {
    const auto it = state.placements.find(tube.id);
    if (it == state.placements.end()) {
      throw ValidationError("tube '" + tube.id + "' has no placement");
    }
    intervals.push_back({it->second, it->second + tube.duration() - 1});
  }
  return TemporalIndex(std::move(intervals));
}

CollisionCount count_collisions(std::span<const Tube> tubes, const SynopsisState& state,
                                double a_thresh, const FrameGeometry& geom) {
  const TemporalIndex index = build_temporal_index(tubes, state);
  std::vector<YExtent> extents;
  std::vector<int> starts;
  extents.reserve(tubes.size());
  for (const Tube& tube : tubes) {
    extents.push_back(y_extent(tube));
    starts.push_back(state.placements.at(tube.id));
  }

  CollisionCount result;
  for (const auto& [i, j] : index.candidate_pairs()) {
    if (y_disjoint(extents[i], extents[j])) continue;
    const PairOverlap po = pair_overlap(tubes[i], starts[i], tubes[j], starts[j], a_thresh, geom);
    if (!po.first_offending_frame) continue;
    const bool i_first = tubes[i].id < tubes[j].id;
    result.pairs.push_back({i_first ? tubes[i].id : tubes[j].id,
                            i_first ? tubes[j].id : tubes[i].id, *po.first_offending_frame,
                            po.max_overlap_area});
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const CollisionPair& x, const CollisionPair& y) {
              return std::tie(x.id_a, x.id_b) < std::tie(y.id_a, y.id_b);
            });
  result.count = static_cast<int>(result.pairs.size());
  return result;
}

}  // namespace tubepack
