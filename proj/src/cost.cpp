#include "tubepack/cost.hpp"

#include <algorithm>

#include "tubepack/collision.hpp"
#include "tubepack/errors.hpp"

namespace tubepack {

TemporalCost temporal_cost(const SynopsisState& state, std::span<const Tube> tubes, int t_v) {
  if (tubes.empty()) throw UndefinedCost("temporal cost of an empty tube set");
  if (t_v < 1) throw InvalidArgument("video duration must be at least one frame");
  int t_last = 0;
  for (const Tube& tube : tubes) {
    const auto it = state.placements.find(tube.id);
    if (it == state.placements.end()) {
      throw ValidationError("tube '" + tube.id + "' has no placement");
    }
    t_last = std::max(t_last, it->second + tube.duration() - 1);
  }
  return {static_cast<double>(t_last) / static_cast<double>(t_v), t_last};
}

CostBreakdown make_cost(int ec, int t_last, int t_v, const SynopsisConstraints& constraints) {
  CostBreakdown cost;
  cost.ec = ec;
  cost.t_last = t_last;
  cost.et = static_cast<double>(t_last) / static_cast<double>(t_v);
  cost.total = constraints.w0() * static_cast<double>(ec) + constraints.w1() * cost.et;
  return cost;
}

CostBreakdown total_cost(const SynopsisState& state, std::span<const Tube> tubes,
                         const SynopsisConstraints& constraints, const FrameGeometry& geom) {
  if (tubes.empty()) throw UndefinedCost("cost of an empty tube set");
  const ValidationReport report = validate_state(state, tubes, constraints);
  if (!report.ok()) throw ValidationError("infeasible state: " + report.summary());
  const TemporalCost temporal = temporal_cost(state, tubes, geom.duration);
  const CollisionCount collisions = count_collisions(tubes, state, constraints.a_thresh(), geom);
  return make_cost(collisions.count, temporal.t_last, geom.duration, constraints);
}

}  // namespace tubepack
