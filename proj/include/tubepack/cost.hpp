#pragma once

#include <span>

#include "tubepack/geometry.hpp"
#include "tubepack/tube.hpp"

namespace tubepack {

// E = w0 * Ec + w1 * Et, with Ec the colliding-pair count and Et = t_last / t_v.
struct CostBreakdown {
  int ec = 0;
  double et = 0.0;
  double total = 0.0;
  int t_last = 0;

  bool operator==(const CostBreakdown&) const = default;
};

struct TemporalCost {
  double et = 0.0;
  int t_last = 0;
};

// Throws UndefinedCost for an empty tube set and ValidationError for a missing placement.
TemporalCost temporal_cost(const SynopsisState& state, std::span<const Tube> tubes, int t_v);

// The single place where a breakdown is assembled, so that every solver and report produces
// bit-identical values for the same (ec, t_last).
CostBreakdown make_cost(int ec, int t_last, int t_v, const SynopsisConstraints& constraints);

// Throws ValidationError if the state breaks t_max, order or placement completeness.
CostBreakdown total_cost(const SynopsisState& state, std::span<const Tube> tubes,
                         const SynopsisConstraints& constraints, const FrameGeometry& geom);

}  // namespace tubepack
