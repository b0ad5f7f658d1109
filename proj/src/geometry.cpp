#include "tubepack/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "tubepack/errors.hpp"

namespace tubepack {
namespace {

double interval_overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

std::string_view to_string(Topology topology) {
  switch (topology) {
    case Topology::kPlanar:
      return "planar";
    case Topology::kCyclicX:
      return "cyclic_x";
  }
  return "planar";
}

Topology topology_from_string(std::string_view name) {
  if (name == "planar") return Topology::kPlanar;
  if (name == "cyclic_x" || name == "cyclic-x" || name == "cyclic") return Topology::kCyclicX;
  throw InvalidArgument("unknown topology '" + std::string(name) + "'");
}

void validate_geometry(const FrameGeometry& geom) {
  if (!(geom.width > 0.0) || !std::isfinite(geom.width)) {
    throw InvalidArgument("frame width must be positive");
  }
  if (!(geom.height > 0.0) || !std::isfinite(geom.height)) {
    throw InvalidArgument("frame height must be positive");
  }
  if (geom.duration < 1) {
    throw InvalidArgument("video duration must be at least one frame");
  }
}

std::string box_violation(const BoundingBox& box, const FrameGeometry& geom) {
  if (!std::isfinite(box.x_min) || !std::isfinite(box.y_min) || !std::isfinite(box.width) ||
      !std::isfinite(box.height)) {
    return "non-finite box coordinate";
  }
  if (!(box.width > 0.0) || !(box.height > 0.0)) return "box width and height must be positive";
  if (box.y_min < 0.0 || box.y_min + box.height > geom.height) return "box exceeds frame height";
  if (geom.topology == Topology::kPlanar) {
    if (box.x_min < 0.0 || box.x_min + box.width > geom.width) return "box exceeds frame width";
  } else {
    if (box.x_min < 0.0 || box.x_min >= geom.width) return "box x_min outside [0, width)";
    if (box.width > geom.width) return "box wider than the frame";
  }
  return {};
}

double circular_overlap(double a, double len_a, double b, double len_b, double circumference) {
  // Copies of arc b shifted by -C, 0 and +C are pairwise disjoint and are the only ones that
  // can meet [a, a + len_a) with a in [0, C).
  double total = 0.0;
  for (int k = -1; k <= 1; ++k) {
    const double shift = k * circumference;
    total += interval_overlap(a, a + len_a, b + shift, b + shift + len_b);
  }
  return total;
}

double box_overlap_area(const BoundingBox& a, const BoundingBox& b, const FrameGeometry& geom) {
  const double dy = interval_overlap(a.y_min, a.y_min + a.height, b.y_min, b.y_min + b.height);
  if (dy <= 0.0) return 0.0;
  double dx = 0.0;
  if (geom.topology == Topology::kCyclicX) {
    dx = circular_overlap(a.x_min, a.width, b.x_min, b.width, geom.width);
  } else {
    dx = interval_overlap(a.x_min, a.x_min + a.width, b.x_min, b.x_min + b.width);
  }
  return dx * dy;
}

}  // namespace tubepack
