#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "tubepack/dataset_io.hpp"

namespace tubepack {
namespace {

struct Edge {
  double dy = 0.0;  // vertical distance between box centres
  int gap = 0;
  std::size_t exit = 0;
  std::size_t entry = 0;
};

double median_box_width(const TrackFile& file) {
  std::vector<double> widths;
  for (const Tube& tube : file.tracks) {
    for (const BoundingBox& b : tube.boxes) widths.push_back(b.width);
  }
  if (widths.empty()) return 0.0;
  std::sort(widths.begin(), widths.end());
  return widths[widths.size() / 2];
}

bool near_right(const BoundingBox& b, double width, double window) {
  return b.x_min + b.width >= width - window;
}

bool near_left(const BoundingBox& b, double window) { return b.x_min <= window; }

bool sizes_agree(double a, double b, double tolerance) {
  return std::abs(a - b) <= tolerance * std::max(a, b);
}

double wrap_x(double x, double width) {
  x = std::fmod(x, width);
  if (x < 0.0) x += width;
  if (x >= width) x = 0.0;
  return x;
}

// Linear blend along the shorter arc of the x circle.
BoundingBox interpolate(const BoundingBox& a, const BoundingBox& b, double s, double width) {
  double dx = b.x_min - a.x_min;
  if (dx > width / 2.0) dx -= width;
  if (dx < -width / 2.0) dx += width;
  return {wrap_x(a.x_min + s * dx, width), a.y_min + s * (b.y_min - a.y_min),
          a.width + s * (b.width - a.width), a.height + s * (b.height - a.height)};
}

}  // namespace

MergeOutcome merge_wrapped_tracks(const TrackFile& file, const MergeOptions& options) {
  MergeOutcome out;
  out.tracks = file;
  if (file.geometry.topology != Topology::kCyclicX) {
    out.warnings.push_back("planar topology: wrap merge skipped");
    return out;
  }
  const double width = file.geometry.width;
  const double window = options.seam_window.value_or(2.0 * median_box_width(file));
  const auto& tracks = file.tracks;

  std::vector<Edge> edges;
  for (std::size_t x = 0; x < tracks.size(); ++x) {
    const BoundingBox& last = tracks[x].boxes.back();
    for (std::size_t y = 0; y < tracks.size(); ++y) {
      if (x == y) continue;
      const int gap = tracks[y].original_start - tracks[x].original_end();
      if (gap < 1 || gap > 1 + options.gap_tolerance) continue;
      const BoundingBox& first = tracks[y].boxes.front();
      const bool crosses = (near_right(last, width, window) && near_left(first, window)) ||
                           (near_left(last, window) && near_right(first, width, window));
      if (!crosses) continue;
      if (!sizes_agree(last.width, first.width, options.size_tolerance) ||
          !sizes_agree(last.height, first.height, options.size_tolerance)) {
        continue;
      }
      const double dy = std::abs((last.y_min + last.height / 2.0) - (first.y_min + first.height / 2.0));
      edges.push_back({dy, gap, x, y});
    }
  }
  // Closest vertical match first, then the shortest gap.
  std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    return std::tie(a.dy, a.gap, tracks[a.exit].id, tracks[a.entry].id) <
           std::tie(b.dy, b.gap, tracks[b.exit].id, tracks[b.entry].id);
  });

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> next(tracks.size(), kNone);
  std::vector<std::size_t> prev(tracks.size(), kNone);
  for (const Edge& e : edges) {
    if (next[e.exit] != kNone || prev[e.entry] != kNone) continue;
    next[e.exit] = e.entry;
    prev[e.entry] = e.exit;
  }

  out.tracks.tracks.clear();
  for (std::size_t head = 0; head < tracks.size(); ++head) {
    if (prev[head] != kNone) continue;
    Tube merged = tracks[head];
    std::vector<TubeId> chain{merged.id};
    for (std::size_t cur = head; next[cur] != kNone; cur = next[cur]) {
      const Tube& entry = tracks[next[cur]];
      const int missing = entry.original_start - merged.original_end() - 1;
      const BoundingBox a = merged.boxes.back();
      for (int g = 1; g <= missing; ++g) {
        const double s = static_cast<double>(g) / static_cast<double>(missing + 1);
        merged.boxes.push_back(interpolate(a, entry.boxes.front(), s, width));
      }
      merged.boxes.insert(merged.boxes.end(), entry.boxes.begin(), entry.boxes.end());
      chain.push_back(entry.id);
    }
    if (chain.size() > 1) out.chains.push_back(std::move(chain));
    out.tracks.tracks.push_back(std::move(merged));
  }
  return out;
}

}  // namespace tubepack
