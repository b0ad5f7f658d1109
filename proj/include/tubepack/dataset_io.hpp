#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tubepack/cost.hpp"
#include "tubepack/geometry.hpp"
#include "tubepack/tube.hpp"

namespace tubepack {

// Track document:
//   {"geometry": {"width": W, "height": H, "duration": T, "topology": "planar" | "cyclic_x"},
//    "tracks": [{"id": "a", "start": 1, "boxes": [[x_min, y_min, width, height], ...]}, ...]}
// Frames are 1-based; box k belongs to frame start + k.
struct TrackFile {
  FrameGeometry geometry;
  std::vector<Tube> tracks;

  bool operator==(const TrackFile&) const = default;
};

// Parse and validate. Throws ParseError on malformed documents and InvalidTrack (naming the
// track id and frame) on geometry violations or duplicate ids.
TrackFile parse_tracks(const std::string& text);
TrackFile load_tracks(const std::filesystem::path& path);

std::string dump_tracks(const TrackFile& file);
void save_tracks(const TrackFile& file, const std::filesystem::path& path);

struct MergeOptions {
  int gap_tolerance = 2;               // missing frames allowed between exit and entry
  std::optional<double> seam_window;   // pixels; default 2 * median box width
  double size_tolerance = 0.2;         // relative width/height disagreement allowed
};

struct MergeOutcome {
  TrackFile tracks;
  std::vector<std::string> warnings;
  // Ids merged into one tube, in time order; the tube keeps the first id.
  std::vector<std::vector<TubeId>> chains;
};

// Joins tracks split by the left/right seam of a panoramic frame into single tubes.
MergeOutcome merge_wrapped_tracks(const TrackFile& file, const MergeOptions& options = {});

enum class EntryPattern {
  kUniformSpread,
  kRandom,
};

// Highway-style constant-velocity traffic. Each track drives horizontally along its own lane
// band (lane = index mod lanes) with a constant box size.
struct SyntheticSpec {
  int track_count = 10;
  double frame_width = 640.0;
  double frame_height = 480.0;
  int video_duration = 600;
  double box_width = 20.0;
  double box_height = 20.0;
  double speed_min = 1.0;  // pixels per frame
  double speed_max = 4.0;
  int lanes = 0;  // 0: one lane per track
  EntryPattern entries = EntryPattern::kRandom;
  bool both_directions = false;
  Topology topology = Topology::kPlanar;
  // CyclicX only: frames per track, 0 for one full lap.
  int cyclic_track_frames = 0;
};

// Deterministic per seed. Throws InvalidArgument when the spec cannot fit the frame or video.
TrackFile generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

// Schedule document:
//   {"version", "seed", "solver", "rng", "constraints": {...},
//    "placements": {"<id>": start, ...}, "cost": {"ec", "et", "total", "t_last"}}
struct ScheduleRecord {
  std::string version;
  std::uint64_t seed = 0;
  std::string solver;
  std::string rng;
  SynopsisConstraints constraints{1, 0, 0.0};
  SynopsisState state;
  CostBreakdown cost;

  bool operator==(const ScheduleRecord&) const = default;
};

std::string dump_schedule(const ScheduleRecord& record);
void save_schedule(const ScheduleRecord& record, const std::filesystem::path& path);

// Throws ParseError on malformed files and on empty placements.
ScheduleRecord parse_schedule(const std::string& text);
ScheduleRecord load_schedule(const std::filesystem::path& path);
// Also checks every placement names a known tube (ParseError naming the id).
ScheduleRecord load_schedule(const std::filesystem::path& path, std::span<const Tube> tubes);

}  // namespace tubepack
