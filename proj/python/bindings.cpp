#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tubepack/collision.hpp"
#include "tubepack/cost.hpp"
#include "tubepack/dataset_io.hpp"
#include "tubepack/errors.hpp"
#include "tubepack/optimizer.hpp"
#include "tubepack/report.hpp"
#include "tubepack/version.hpp"

namespace py = pybind11;
using namespace tubepack;

namespace {

std::map<TubeId, int> placements(const SolveResult& r) { return r.best_state.placements; }

SynopsisState to_state(const std::map<TubeId, int>& p) { return SynopsisState{p}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Temporal tube packing for video synopsis.";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", m.attr("Error"));
  py::register_exception<InvalidTrack>(m, "InvalidTrack", m.attr("Error"));
  py::register_exception<InvalidArgument>(m, "InvalidArgument", m.attr("Error"));
  py::register_exception<InstanceRejected>(m, "InstanceRejected", m.attr("Error"));
  py::register_exception<ValidationError>(m, "ValidationError", m.attr("Error"));
  py::register_exception<OracleTooLarge>(m, "OracleTooLarge", m.attr("Error"));
  py::register_exception<UndefinedCost>(m, "UndefinedCost", m.attr("Error"));

  py::enum_<Topology>(m, "Topology")
      .value("PLANAR", Topology::kPlanar)
      .value("CYCLIC_X", Topology::kCyclicX);

  py::class_<FrameGeometry>(m, "FrameGeometry")
      .def(py::init([](double w, double h, int duration, Topology topology) {
             FrameGeometry g{w, h, duration, topology};
             validate_geometry(g);
             return g;
           }),
           py::arg("width"), py::arg("height"), py::arg("duration"),
           py::arg("topology") = Topology::kPlanar)
      .def_readonly("width", &FrameGeometry::width)
      .def_readonly("height", &FrameGeometry::height)
      .def_readonly("duration", &FrameGeometry::duration)
      .def_readonly("topology", &FrameGeometry::topology);

  py::class_<BoundingBox>(m, "BoundingBox")
      .def(py::init<double, double, double, double>(), py::arg("x_min"), py::arg("y_min"),
           py::arg("width"), py::arg("height"))
      .def_readonly("x_min", &BoundingBox::x_min)
      .def_readonly("y_min", &BoundingBox::y_min)
      .def_readonly("width", &BoundingBox::width)
      .def_readonly("height", &BoundingBox::height)
      .def("area", &BoundingBox::area)
      .def("__eq__", [](const BoundingBox& a, const BoundingBox& b) { return a == b; })
      .def("__repr__", [](const BoundingBox& b) {
        return "BoundingBox(" + std::to_string(b.x_min) + ", " + std::to_string(b.y_min) + ", " +
               std::to_string(b.width) + ", " + std::to_string(b.height) + ")";
      });

  py::class_<Tube>(m, "Tube")
      .def(py::init([](TubeId id, int start, std::vector<BoundingBox> boxes) {
             return Tube{std::move(id), start, std::move(boxes)};
           }),
           py::arg("id"), py::arg("start"), py::arg("boxes"))
      .def_readonly("id", &Tube::id)
      .def_readonly("original_start", &Tube::original_start)
      .def_readonly("boxes", &Tube::boxes)
      .def_property_readonly("duration", &Tube::duration);

  py::class_<SynopsisConstraints>(m, "SynopsisConstraints")
      .def(py::init<int, int, double, bool, double, double>(), py::arg("t_max"),
           py::arg("n_max") = 0, py::arg("a_thresh") = 1.0, py::arg("preserve_order") = false,
           py::arg("w0") = 1.0, py::arg("w1") = 1.0)
      .def_property_readonly("t_max", &SynopsisConstraints::t_max)
      .def_property_readonly("n_max", &SynopsisConstraints::n_max)
      .def_property_readonly("a_thresh", &SynopsisConstraints::a_thresh)
      .def_property_readonly("preserve_order", &SynopsisConstraints::preserve_order)
      .def_property_readonly("w0", &SynopsisConstraints::w0)
      .def_property_readonly("w1", &SynopsisConstraints::w1);

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("ec", &CostBreakdown::ec)
      .def_readonly("et", &CostBreakdown::et)
      .def_readonly("total", &CostBreakdown::total)
      .def_readonly("t_last", &CostBreakdown::t_last);

  py::class_<TraceEntry>(m, "TraceEntry")
      .def_readonly("iteration", &TraceEntry::iteration)
      .def_readonly("temperature", &TraceEntry::temperature)
      .def_readonly("current_total", &TraceEntry::current_total)
      .def_readonly("best_total", &TraceEntry::best_total);

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("placements", &placements)
      .def_readonly("best_cost", &SolveResult::best_cost)
      .def_readonly("feasible", &SolveResult::feasible)
      .def_readonly("trace", &SolveResult::trace)
      .def_readonly("iterations_used", &SolveResult::iterations_used)
      .def_readonly("solver", &SolveResult::solver)
      .def_readonly("seed", &SolveResult::seed);

  py::class_<TrackFile>(m, "TrackFile")
      .def(py::init([](FrameGeometry g, std::vector<Tube> tracks) {
             validate_tubes(tracks, g);
             return TrackFile{g, std::move(tracks)};
           }),
           py::arg("geometry"), py::arg("tracks"))
      .def_readonly("geometry", &TrackFile::geometry)
      .def_readonly("tracks", &TrackFile::tracks);

  m.def("box_overlap_area", &box_overlap_area, py::arg("a"), py::arg("b"), py::arg("geometry"));

  m.def(
      "count_collisions",
      [](const std::vector<Tube>& tubes, const std::map<TubeId, int>& p, double a_thresh,
         const FrameGeometry& g) {
        const CollisionCount c = count_collisions(tubes, to_state(p), a_thresh, g);
        py::list pairs;
        for (const CollisionPair& pair : c.pairs) {
          pairs.append(py::make_tuple(pair.id_a, pair.id_b, pair.first_offending_frame,
                                      pair.max_overlap_area));
        }
        return py::make_tuple(c.count, pairs);
      },
      py::arg("tubes"), py::arg("placements"), py::arg("a_thresh"), py::arg("geometry"));

  m.def(
      "total_cost",
      [](const std::map<TubeId, int>& p, const std::vector<Tube>& tubes,
         const SynopsisConstraints& c, const FrameGeometry& g) {
        return total_cost(to_state(p), tubes, c, g);
      },
      py::arg("placements"), py::arg("tubes"), py::arg("constraints"), py::arg("geometry"));

  m.def(
      "validate_state",
      [](const std::map<TubeId, int>& p, const std::vector<Tube>& tubes,
         const SynopsisConstraints& c) {
        std::vector<std::string> messages;
        for (const Violation& v : validate_state(to_state(p), tubes, c).violations) {
          messages.push_back(v.message);
        }
        return messages;
      },
      py::arg("placements"), py::arg("tubes"), py::arg("constraints"));

  m.def(
      "anneal",
      [](const std::vector<Tube>& tubes, const SynopsisConstraints& c, const FrameGeometry& g,
         std::uint64_t seed, std::optional<double> t0, double cooling, std::optional<int> steps,
         double tmin, std::int64_t max_iter, const std::string& warm_start) {
        AnnealParams params;
        params.seed = seed;
        params.initial_temperature = t0;
        params.cooling_factor = cooling;
        params.steps_per_temperature = steps;
        params.min_temperature = tmin;
        params.max_iterations = max_iter;
        params.warm_start = warm_start == "greedy" ? WarmStart::kGreedy : WarmStart::kOriginal;
        py::gil_scoped_release release;
        return anneal(tubes, c, params, g);
      },
      py::arg("tubes"), py::arg("constraints"), py::arg("geometry"), py::arg("seed") = 0,
      py::arg("initial_temperature") = py::none(), py::arg("cooling_factor") = 0.95,
      py::arg("steps_per_temperature") = py::none(), py::arg("min_temperature") = 1e-4,
      py::arg("max_iterations") = 1'000'000, py::arg("warm_start") = "original");

  m.def(
      "greedy_pack",
      [](const std::vector<Tube>& tubes, const SynopsisConstraints& c, const FrameGeometry& g) {
        return greedy_pack(tubes, c, g);
      },
      py::arg("tubes"), py::arg("constraints"), py::arg("geometry"));

  m.def(
      "exhaustive_optimal",
      [](const std::vector<Tube>& tubes, const SynopsisConstraints& c, const FrameGeometry& g,
         std::uint64_t max_states) {
        return exhaustive_optimal(tubes, c, g, ExhaustiveOptions{max_states});
      },
      py::arg("tubes"), py::arg("constraints"), py::arg("geometry"),
      py::arg("max_states") = ExhaustiveOptions{}.max_states);

  m.def("load_tracks", [](const std::filesystem::path& p) { return load_tracks(p); },
        py::arg("path"));
  m.def("save_tracks", [](const TrackFile& f, const std::filesystem::path& p) { save_tracks(f, p); },
        py::arg("track_file"), py::arg("path"));

  m.def(
      "merge_wrapped_tracks",
      [](const TrackFile& f, int gap_tolerance, std::optional<double> seam_window) {
        MergeOptions o;
        o.gap_tolerance = gap_tolerance;
        o.seam_window = seam_window;
        return merge_wrapped_tracks(f, o).tracks;
      },
      py::arg("track_file"), py::arg("gap_tolerance") = 2, py::arg("seam_window") = py::none());

  m.def(
      "generate_synthetic",
      [](int count, double width, double height, int duration, double box_w, double box_h,
         double speed_min, double speed_max, int lanes, bool uniform_entries, Topology topology,
         std::uint64_t seed) {
        SyntheticSpec s;
        s.track_count = count;
        s.frame_width = width;
        s.frame_height = height;
        s.video_duration = duration;
        s.box_width = box_w;
        s.box_height = box_h;
        s.speed_min = speed_min;
        s.speed_max = speed_max;
        s.lanes = lanes;
        s.entries = uniform_entries ? EntryPattern::kUniformSpread : EntryPattern::kRandom;
        s.topology = topology;
        return generate_synthetic(s, seed);
      },
      py::arg("count"), py::arg("width"), py::arg("height"), py::arg("duration"),
      py::arg("box_width"), py::arg("box_height"), py::arg("speed_min"), py::arg("speed_max"),
      py::arg("lanes") = 0, py::arg("uniform_entries") = false,
      py::arg("topology") = Topology::kPlanar, py::arg("seed") = 0);
}
