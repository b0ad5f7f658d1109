#pragma once

#include <string>
#include <string_view>

namespace tubepack {

enum class Topology {
  kPlanar,
  // Left and right frame edges identified (panoramic footage). y and t are not identified.
  kCyclicX,
};

std::string_view to_string(Topology topology);
Topology topology_from_string(std::string_view name);

struct FrameGeometry {
  double width = 0.0;   // pixels
  double height = 0.0;  // pixels
  int duration = 1;     // frames in the source video
  Topology topology = Topology::kPlanar;

  bool operator==(const FrameGeometry&) const = default;
};

// Throws InvalidArgument unless width > 0, height > 0 and duration >= 1.
void validate_geometry(const FrameGeometry& geom);

// Axis-aligned box. Under kCyclicX a box may straddle the seam and then covers
// [x_min, width) and [0, (x_min + box_width) - width).
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double width = 0.0;
  double height = 0.0;

  double area() const { return width * height; }
  bool operator==(const BoundingBox&) const = default;
};

// Empty string when the box is valid for the geometry, otherwise the reason.
std::string box_violation(const BoundingBox& box, const FrameGeometry& geom);

// Length of the intersection of the arcs [a, a + len_a) and [b, b + len_b) on a circle
// of the given circumference. Both starts in [0, circumference), both lengths <= circumference.
// A wrapped intersection made of two disjoint pieces returns their sum.
double circular_overlap(double a, double len_a, double b, double len_b, double circumference);

// Intersection area of two boxes. Planar: rectangle intersection. CyclicX: y overlap times
// circular x overlap.
double box_overlap_area(const BoundingBox& a, const BoundingBox& b, const FrameGeometry& geom);

}  // namespace tubepack
