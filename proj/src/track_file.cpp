#include <set>

#include "json_util.hpp"
#include "tubepack/dataset_io.hpp"
#include "tubepack/errors.hpp"

namespace tubepack {

using detail::Json;

TrackFile parse_tracks(const std::string& text) {
  const Json doc = detail::parse_json(text);
  const Json& g = detail::member(doc, "geometry", "track file");
  TrackFile file;
  file.geometry.width = detail::number_member(g, "width", "geometry");
  file.geometry.height = detail::number_member(g, "height", "geometry");
  file.geometry.duration = detail::int_member(g, "duration", "geometry");
  const Json& topo = detail::member(g, "topology", "geometry");
  if (!topo.is_string()) throw ParseError("geometry: 'topology' must be a string");
  try {
    file.geometry.topology = topology_from_string(topo.get<std::string>());
    validate_geometry(file.geometry);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("geometry: ") + e.what());
  }

  const Json& tracks = detail::member(doc, "tracks", "track file");
  if (!tracks.is_array()) throw ParseError("track file: 'tracks' must be an array");
  std::set<TubeId> seen;
  for (std::size_t n = 0; n < tracks.size(); ++n) {
    const Json& t = tracks[n];
    const std::string where = "tracks[" + std::to_string(n) + "]";
    Tube tube;
    const Json& id = detail::member(t, "id", where);
    if (id.is_string()) {
      tube.id = id.get<std::string>();
    } else if (id.is_number_integer()) {
      tube.id = id.dump();
    } else {
      throw ParseError(where + ": 'id' must be a string or an integer");
    }
    if (tube.id.empty()) throw ParseError(where + ": empty id");
    tube.original_start = detail::int_member(t, "start", where);
    const Json& boxes = detail::member(t, "boxes", where);
    if (!boxes.is_array()) throw ParseError(where + ": 'boxes' must be an array");
    for (std::size_t k = 0; k < boxes.size(); ++k) {
      const Json& b = boxes[k];
      if (!b.is_array() || b.size() != 4 ||
          !std::all_of(b.begin(), b.end(), [](const Json& v) { return v.is_number(); })) {
        throw InvalidTrack(tube.id, static_cast<int>(k) + 1,
                           "box must be [x_min, y_min, width, height]");
      }
      tube.boxes.push_back(
          {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()});
    }
    validate_tube(tube, file.geometry);
    if (!seen.insert(tube.id).second) throw InvalidTrack(tube.id, 0, "duplicate track id");
    file.tracks.push_back(std::move(tube));
  }
  return file;
}

TrackFile load_tracks(const std::filesystem::path& path) {
  return parse_tracks(detail::read_text(path));
}

std::string dump_tracks(const TrackFile& file) {
  Json doc;
  doc["geometry"] = {{"width", file.geometry.width},
                     {"height", file.geometry.height},
                     {"duration", file.geometry.duration},
                     {"topology", std::string(to_string(file.geometry.topology))}};
  Json tracks = Json::array();
  for (const Tube& tube : file.tracks) {
    Json boxes = Json::array();
    for (const BoundingBox& b : tube.boxes) {
      boxes.push_back(Json::array({b.x_min, b.y_min, b.width, b.height}));
    }
    tracks.push_back({{"id", tube.id}, {"start", tube.original_start}, {"boxes", boxes}});
  }
  doc["tracks"] = std::move(tracks);
  return doc.dump(1) + "\n";
}

void save_tracks(const TrackFile& file, const std::filesystem::path& path) {
  detail::write_text(path, dump_tracks(file));
}

}  // namespace tubepack
