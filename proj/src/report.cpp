#include "tubepack/report.hpp"

#include <cstdio>

#include "tubepack/collision.hpp"

namespace tubepack {
namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SynopsisReport compute_report(std::span<const Tube> tubes, const SynopsisState& state,
                              const SynopsisConstraints& constraints, const FrameGeometry& geom) {
  SynopsisReport report;
  report.cost = total_cost(state, tubes, constraints, geom);
  report.t_last = report.cost.t_last;
  report.t_v = geom.duration;
  report.collision_pairs = report.cost.ec;
  report.feasible = report.cost.ec <= constraints.n_max();
  report.frame_condensation_ratio = report.cost.et;

  double footprint = 0.0;
  for (const Tube& tube : tubes) {
    for (const BoundingBox& b : tube.boxes) footprint += b.area();
  }
  report.compact_ratio = footprint / (geom.width * geom.height * report.t_last);

  const CollisionCount collisions = count_collisions(tubes, state, constraints.a_thresh(), geom);
  double offending = 0.0;
  for (const CollisionPair& pair : collisions.pairs) {
    const Tube* a = nullptr;
    const Tube* b = nullptr;
    for (const Tube& tube : tubes) {
      if (tube.id == pair.id_a) a = &tube;
      if (tube.id == pair.id_b) b = &tube;
    }
    offending += pair_overlap(*a, state.placements.at(a->id), *b, state.placements.at(b->id),
                              constraints.a_thresh(), geom)
                     .total_overlap_area;
  }
  report.overlap_ratio = footprint > 0.0 ? offending / footprint : 0.0;
  return report;
}

std::string report_csv_header() {
  return "solver,seed,t_v,t_last,frame_condensation_ratio,compact_ratio,overlap_ratio,"
         "collision_pairs,ec,et,total,feasible,wall_time";
}

std::string report_csv_row(const SynopsisReport& r) {
  std::string row = r.solver;
  row += "," + std::to_string(r.seed);
  row += "," + std::to_string(r.t_v);
  row += "," + std::to_string(r.t_last);
  row += "," + fmt_double(r.frame_condensation_ratio);
  row += "," + fmt_double(r.compact_ratio);
  row += "," + fmt_double(r.overlap_ratio);
  row += "," + std::to_string(r.collision_pairs);
  row += "," + std::to_string(r.cost.ec);
  row += "," + fmt_double(r.cost.et);
  row += "," + fmt_double(r.cost.total);
  row += r.feasible ? ",1" : ",0";
  row += "," + fmt_double(r.wall_time);
  return row;
}

}  // namespace tubepack
