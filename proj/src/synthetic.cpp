#include <algorithm>
#include <cmath>

#include "tubepack/dataset_io.hpp"
#include "tubepack/errors.hpp"
#include "tubepack/rng.hpp"

namespace tubepack {
namespace {

void check_spec(const SyntheticSpec& spec) {
  if (spec.track_count < 1) throw InvalidArgument("track count must be >= 1");
  if (spec.video_duration < 1) throw InvalidArgument("video duration must be >= 1");
  if (!(spec.frame_width > 0.0) || !(spec.frame_height > 0.0)) {
    throw InvalidArgument("frame size must be positive");
  }
  if (!(spec.box_width > 0.0) || !(spec.box_height > 0.0)) {
    throw InvalidArgument("box size must be positive");
  }
  if (spec.box_width > spec.frame_width) throw InvalidArgument("box wider than the frame");
  if (!(spec.speed_min > 0.0) || spec.speed_max < spec.speed_min) {
    throw InvalidArgument("speeds must satisfy 0 < speed_min <= speed_max");
  }
  if (spec.lanes < 0) throw InvalidArgument("lane count must be >= 0");
  if (spec.cyclic_track_frames < 0) throw InvalidArgument("cyclic track frames must be >= 0");
}

}  // namespace

TrackFile generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  check_spec(spec);
  Rng rng(seed);
  TrackFile file;
  file.geometry = {spec.frame_width, spec.frame_height, spec.video_duration, spec.topology};

  const int lanes = spec.lanes == 0 ? spec.track_count : spec.lanes;
  const double lane_height = spec.frame_height / lanes;
  if (spec.box_height > lane_height) {
    throw InvalidArgument("box height exceeds the lane height");
  }
  const bool cyclic = spec.topology == Topology::kCyclicX;

  struct Draft {
    double speed;
    bool leftward;
    double x0;
    int frames;
  };
  std::vector<Draft> drafts;
  int longest = 0;
  for (int i = 0; i < spec.track_count; ++i) {
    Draft d{};
    d.speed = spec.speed_min + (spec.speed_max - spec.speed_min) * rng.uniform01();
    d.leftward = spec.both_directions && rng.uniform01() < 0.5;
    if (cyclic) {
      d.x0 = std::floor(rng.uniform01() * spec.frame_width);
      d.frames = spec.cyclic_track_frames > 0
                     ? spec.cyclic_track_frames
                     : std::max(2, static_cast<int>(std::floor(spec.frame_width / d.speed)));
    } else {
      // x_min runs over [0, W - w] in steps of the speed.
      d.frames = static_cast<int>(std::floor((spec.frame_width - spec.box_width) / d.speed)) + 1;
      d.x0 = d.leftward ? spec.frame_width - spec.box_width : 0.0;
    }
    if (d.frames > spec.video_duration) {
      throw InvalidArgument("track " + std::to_string(i) + " needs " + std::to_string(d.frames) +
                            " frames, more than the video duration");
    }
    longest = std::max(longest, d.frames);
    drafts.push_back(d);
  }

  for (int i = 0; i < spec.track_count; ++i) {
    const Draft& d = drafts[static_cast<std::size_t>(i)];
    int start = 1;
    if (spec.entries == EntryPattern::kUniformSpread) {
      const long long room = spec.video_duration - longest;
      start = 1 + static_cast<int>(spec.track_count > 1 ? room * i / (spec.track_count - 1) : 0);
    } else {
      start = static_cast<int>(rng.uniform_int(1, spec.video_duration - d.frames + 1));
    }
    const int lane = i % lanes;
    const double y = lane * lane_height + (lane_height - spec.box_height) / 2.0;
    Tube tube;
    tube.id = "t" + std::to_string(i);
    tube.original_start = start;
    for (int k = 0; k < d.frames; ++k) {
      const double step = (d.leftward ? -1.0 : 1.0) * d.speed * k;
      double x = d.x0 + step;
      if (cyclic) {
        x = std::fmod(x, spec.frame_width);
        if (x < 0.0) x += spec.frame_width;
        if (x >= spec.frame_width) x = 0.0;
      } else {
        x = std::clamp(x, 0.0, spec.frame_width - spec.box_width);
      }
      tube.boxes.push_back({x, y, spec.box_width, spec.box_height});
    }
    validate_tube(tube, file.geometry);
    file.tracks.push_back(std::move(tube));
  }
  return file;
}

}  // namespace tubepack
