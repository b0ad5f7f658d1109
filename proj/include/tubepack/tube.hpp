#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tubepack/geometry.hpp"

namespace tubepack {

using TubeId = std::string;

// One object track: a box per frame of its life. Frames are 1-based.
struct Tube {
  TubeId id;
  int original_start = 1;
  std::vector<BoundingBox> boxes;

  int duration() const { return static_cast<int>(boxes.size()); }
  int original_end() const { return original_start + duration() - 1; }

  bool operator==(const Tube&) const = default;
};

// Throws InvalidTrack naming the offending frame (1-based index into the tube's life).
void validate_tube(const Tube& tube, const FrameGeometry& geom);

// validate_tube on every tube plus id uniqueness.
void validate_tubes(std::span<const Tube> tubes, const FrameGeometry& geom);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Constant-shape object moving by its centroid.
struct FixedShapeTrack {
  TubeId id;
  std::vector<Point> centroids;
  double half_width = 0.0;
  double half_height = 0.0;
  int original_start = 1;
};

// Box k is the centroid k offset by the half extents. Under kCyclicX x_min wraps into [0, width).
Tube track_to_tube(const FixedShapeTrack& track, const FrameGeometry& geom);

// Synopsis start frame (1-based) per tube id.
struct SynopsisState {
  std::map<TubeId, int> placements;

  bool operator==(const SynopsisState&) const = default;
};

// The original placement of every tube.
SynopsisState original_state(std::span<const Tube> tubes);

class SynopsisConstraints {
 public:
  // Throws InvalidArgument on negative values or w0 + w1 == 0.
  SynopsisConstraints(int t_max, int n_max, double a_thresh, bool preserve_order = false,
                      double w0 = 1.0, double w1 = 1.0);

  int t_max() const { return t_max_; }
  int n_max() const { return n_max_; }
  double a_thresh() const { return a_thresh_; }
  bool preserve_order() const { return preserve_order_; }
  double w0() const { return w0_; }
  double w1() const { return w1_; }

  bool operator==(const SynopsisConstraints&) const = default;

 private:
  int t_max_;
  int n_max_;
  double a_thresh_;
  bool preserve_order_;
  double w0_;
  double w1_;
};

// Throws InstanceRejected when the tube set is empty or some tube is longer than t_max.
void admit_instance(std::span<const Tube> tubes, const SynopsisConstraints& constraints);

// Tube indices in rank order: ascending original start, ties by id.
std::vector<std::size_t> rank_order(std::span<const Tube> tubes);

enum class ViolationKind {
  kMissingPlacement,
  kUnknownTube,
  kStartBeforeFirstFrame,
  kEndAfterTMax,
  kOrderViolation,
};

struct Violation {
  ViolationKind kind;
  TubeId tube_id;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Non-fatal observations, e.g. single-frame tubes.
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_state(const SynopsisState& state, std::span<const Tube> tubes,
                                const SynopsisConstraints& constraints);

}  // namespace tubepack
