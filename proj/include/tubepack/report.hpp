#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "tubepack/cost.hpp"
#include "tubepack/geometry.hpp"
#include "tubepack/tube.hpp"

namespace tubepack {

// Summary metrics of one synopsis.
//   frame_condensation_ratio = t_last / t_v (identical to Et)
//   compact_ratio            = sum of tube space-time volumes / (width * height * t_last)
//   overlap_ratio            = overlap area summed over colliding pairs and their shared
//                              frames / box area summed over all tubes and frames
struct SynopsisReport {
  double frame_condensation_ratio = 0.0;
  double compact_ratio = 0.0;
  double overlap_ratio = 0.0;
  int collision_pairs = 0;
  int t_last = 0;
  int t_v = 0;
  CostBreakdown cost;
  bool feasible = false;
  std::string solver;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds
};

// Throws ValidationError for infeasible states.
SynopsisReport compute_report(std::span<const Tube> tubes, const SynopsisState& state,
                              const SynopsisConstraints& constraints, const FrameGeometry& geom);

std::string report_csv_header();
std::string report_csv_row(const SynopsisReport& report);

}  // namespace tubepack
