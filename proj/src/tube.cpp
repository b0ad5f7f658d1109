#include "tubepack/tube.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "tubepack/errors.hpp"

namespace tubepack {

void validate_tube(const Tube& tube, const FrameGeometry& geom) {
  if (tube.boxes.empty()) throw InvalidTrack(tube.id, 0, "track has no boxes");
  if (tube.original_start < 1) throw InvalidTrack(tube.id, 1, "start frame must be >= 1");
  if (tube.original_end() > geom.duration) {
    throw InvalidTrack(tube.id, tube.duration(), "track ends after the last video frame");
  }
  for (std::size_t k = 0; k < tube.boxes.size(); ++k) {
    const std::string why = box_violation(tube.boxes[k], geom);
    if (!why.empty()) throw InvalidTrack(tube.id, static_cast<int>(k) + 1, why);
  }
}

void validate_tubes(std::span<const Tube> tubes, const FrameGeometry& geom) {
  std::set<TubeId> seen;
  for (const Tube& tube : tubes) {
    validate_tube(tube, geom);
    if (!seen.insert(tube.id).second) throw InvalidTrack(tube.id, 0, "duplicate track id");
  }
}

Tube track_to_tube(const FixedShapeTrack& track, const FrameGeometry& geom) {
  if (track.centroids.empty()) throw InvalidTrack(track.id, 0, "track has no centroids");
  if (!(track.half_width > 0.0) || !(track.half_height > 0.0)) {
    throw InvalidTrack(track.id, 1, "half extents must be positive");
  }
  Tube tube{track.id, track.original_start, {}};
  tube.boxes.reserve(track.centroids.size());
  for (std::size_t k = 0; k < track.centroids.size(); ++k) {
    const Point& c = track.centroids[k];
    BoundingBox box{c.x - track.half_width, c.y - track.half_height, 2.0 * track.half_width,
                    2.0 * track.half_height};
    if (geom.topology == Topology::kCyclicX) {
      box.x_min = std::fmod(box.x_min, geom.width);
      if (box.x_min < 0.0) box.x_min += geom.width;
      if (box.x_min >= geom.width) box.x_min = 0.0;
    }
    const std::string why = box_violation(box, geom);
    if (!why.empty()) throw InvalidTrack(track.id, static_cast<int>(k) + 1, why);
    tube.boxes.push_back(box);
  }
  return tube;
}

SynopsisState original_state(std::span<const Tube> tubes) {
  SynopsisState state;
  for (const Tube& tube : tubes) state.placements[tube.id] = tube.original_start;
  return state;
}

SynopsisConstraints::SynopsisConstraints(int t_max, int n_max, double a_thresh,
                                         bool preserve_order, double w0, double w1)
    : t_max_(t_max),
      n_max_(n_max),
      a_thresh_(a_thresh),
      preserve_order_(preserve_order),
      w0_(w0),
      w1_(w1) {
  if (t_max < 1) throw InvalidArgument("t_max must be >= 1");
  if (n_max < 0) throw InvalidArgument("n_max must be >= 0");
  if (!(a_thresh >= 0.0) || !std::isfinite(a_thresh)) {
    throw InvalidArgument("a_thresh must be a finite value >= 0");
  }
  if (!(w0 >= 0.0) || !(w1 >= 0.0) || !std::isfinite(w0) || !std::isfinite(w1)) {
    throw InvalidArgument("cost weights must be finite and >= 0");
  }
  if (!(w0 + w1 > 0.0)) throw InvalidArgument("w0 + w1 must be positive");
}

void admit_instance(std::span<const Tube> tubes, const SynopsisConstraints& constraints) {
  if (tubes.empty()) throw InstanceRejected("instance has no tubes");
  for (const Tube& tube : tubes) {
    if (tube.duration() > constraints.t_max()) {
      throw InstanceRejected("tube '" + tube.id + "' lasts " + std::to_string(tube.duration()) +
                             " frames, longer than t_max = " +
                             std::to_string(constraints.t_max()));
    }
  }
}

std::vector<std::size_t> rank_order(std::span<const Tube> tubes) {
  std::vector<std::size_t> order(tubes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (tubes[a].original_start != tubes[b].original_start) {
      return tubes[a].original_start < tubes[b].original_start;
    }
    return tubes[a].id < tubes[b].id;
  });
  return order;
}

std::string ValidationReport::summary() const {
  if (violations.empty()) return "ok";
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

ValidationReport validate_state(const SynopsisState& state, std::span<const Tube> tubes,
                                const SynopsisConstraints& constraints) {
  ValidationReport report;
  std::set<TubeId> known;
  for (const Tube& tube : tubes) {
    known.insert(tube.id);
    if (tube.duration() == 1) {
      report.notes.push_back("tube '" + tube.id + "' lasts a single frame");
    }
    const auto it = state.placements.find(tube.id);
    if (it == state.placements.end()) {
      report.violations.push_back({ViolationKind::kMissingPlacement, tube.id,
                                   "tube '" + tube.id + "' has no placement"});
      continue;
    }
    const int start = it->second;
    if (start < 1) {
      report.violations.push_back({ViolationKind::kStartBeforeFirstFrame, tube.id,
                                   "tube '" + tube.id + "' starts at frame " +
                                       std::to_string(start) + " < 1"});
    }
    const long long end = static_cast<long long>(start) + tube.duration() - 1;
    if (end > constraints.t_max()) {
      report.violations.push_back({ViolationKind::kEndAfterTMax, tube.id,
                                   "tube '" + tube.id + "' ends at frame " + std::to_string(end) +
                                       " > t_max " + std::to_string(constraints.t_max())});
    }
  }
  for (const auto& [id, start] : state.placements) {
    if (!known.contains(id)) {
      report.violations.push_back(
          {ViolationKind::kUnknownTube, id, "placement for unknown tube '" + id + "'"});
    }
  }
  if (constraints.preserve_order()) {
    const std::vector<std::size_t> order = rank_order(tubes);
    const Tube* prev = nullptr;
    int prev_start = 0;
    for (std::size_t idx : order) {
      const auto it = state.placements.find(tubes[idx].id);
      if (it == state.placements.end()) continue;
      if (prev != nullptr && it->second < prev_start) {
        report.violations.push_back(
            {ViolationKind::kOrderViolation, tubes[idx].id,
             "tube '" + tubes[idx].id + "' starts at " + std::to_string(it->second) +
                 " before its predecessor '" + prev->id + "' at " + std::to_string(prev_start)});
      }
      prev = &tubes[idx];
      prev_start = it->second;
    }
  }
  return report;
}

}  // namespace tubepack
