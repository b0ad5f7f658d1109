#include "tubepack/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "tubepack/dataset_io.hpp"
#include "tubepack/errors.hpp"
#include "tubepack/optimizer.hpp"
#include "tubepack/report.hpp"
#include "tubepack/version.hpp"

namespace tubepack {
namespace {

struct SolveOptions {
  std::string tracks_path;
  std::vector<std::string> solvers;
  std::optional<int> t_max;
  double a_thresh = 1.0;
  int n_max = 0;
  double w0 = 1.0;
  double w1 = 1.0;
  bool preserve_order = false;
  bool merge_wrapped = false;
  std::string warm_start = "original";
  std::uint64_t seed = 0;
  std::optional<double> sa_cooling;
  std::optional<int> sa_steps;
  std::optional<double> sa_t0;
  std::optional<double> sa_tmin;
  std::optional<std::int64_t> sa_max_iter;
  std::string sa_kernel = "drop";
  std::uint64_t oracle_budget = ExhaustiveOptions{}.max_states;
  std::string out_path;
  std::string report_path;
  std::string trace_path;
};

const std::vector<std::string> kSolverNames{"sa", "greedy", "exhaustive"};

void add_solve_flags(CLI::App& cmd, SolveOptions& o) {
  cmd.add_option("--tracks", o.tracks_path, "track file (JSON)")->required();
  cmd.add_option("--t-max", o.t_max, "maximum synopsis length in frames (default: video length)");
  cmd.add_option("--a-thresh", o.a_thresh, "collision overlap threshold in px^2");
  cmd.add_option("--n-max", o.n_max, "maximum colliding pairs in the final synopsis");
  cmd.add_option("--w0", o.w0, "collision cost weight");
  cmd.add_option("--w1", o.w1, "temporal cost weight");
  cmd.add_flag("--preserve-order", o.preserve_order, "keep the original start order");
  cmd.add_flag("--merge-wrapped", o.merge_wrapped, "join seam-split tracks (cyclic_x only)");
  cmd.add_option("--warm-start", o.warm_start, "SA initial state")
      ->check(CLI::IsMember({"original", "greedy"}));
  cmd.add_option("--seed", o.seed, "RNG seed");
  cmd.add_option("--sa-cooling", o.sa_cooling, "geometric cooling factor in (0,1)");
  cmd.add_option("--sa-steps", o.sa_steps, "proposals per temperature level");
  cmd.add_option("--sa-t0", o.sa_t0, "initial temperature (default: calibrated)");
  cmd.add_option("--sa-tmin", o.sa_tmin, "stop temperature");
  cmd.add_option("--sa-max-iter", o.sa_max_iter, "iteration cap");
  cmd.add_option("--sa-kernel", o.sa_kernel, "move kernel")
      ->check(CLI::IsMember({"uniform", "drop"}));
  cmd.add_option("--oracle-budget", o.oracle_budget, "state budget for the exhaustive solver");
}

class CliFailure : public std::exception {
 public:
  CliFailure(int code, std::string message) : code_(code), message_(std::move(message)) {}
  int code() const { return code_; }
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  int code_;
  std::string message_;
};

TrackFile load_instance(const SolveOptions& o, std::ostream& err) {
  TrackFile file;
  try {
    file = load_tracks(o.tracks_path);
  } catch (const Error& e) {
    throw CliFailure(kExitParseFailure, e.what());
  }
  if (o.merge_wrapped) {
    MergeOutcome merged = merge_wrapped_tracks(file);
    for (const std::string& w : merged.warnings) err << "warning: " << w << "\n";
    file = std::move(merged.tracks);
  }
  return file;
}

SynopsisConstraints make_constraints(const SolveOptions& o, const TrackFile& file) {
  try {
    return SynopsisConstraints(o.t_max.value_or(file.geometry.duration), o.n_max, o.a_thresh,
                               o.preserve_order, o.w0, o.w1);
  } catch (const InvalidArgument& e) {
    throw CliFailure(kExitUsage, e.what());
  }
}

struct TimedResult {
  SolveResult result;
  double wall_time = 0.0;
};

TimedResult solve(const std::string& solver, const SolveOptions& o, const TrackFile& file,
                  const SynopsisConstraints& constraints) {
  const auto t0 = std::chrono::steady_clock::now();
  TimedResult timed;
  try {
    if (solver == "sa") {
      AnnealParams params;
      params.seed = o.seed;
      params.initial_temperature = o.sa_t0;
      params.steps_per_temperature = o.sa_steps;
      if (o.sa_cooling) params.cooling_factor = *o.sa_cooling;
      if (o.sa_tmin) params.min_temperature = *o.sa_tmin;
      if (o.sa_max_iter) params.max_iterations = *o.sa_max_iter;
      params.warm_start = o.warm_start == "greedy" ? WarmStart::kGreedy : WarmStart::kOriginal;
      params.kernel = o.sa_kernel == "uniform" ? MoveKernel::kUniform : MoveKernel::kUniformWithDrop;
      timed.result = anneal(file.tracks, constraints, params, file.geometry);
    } else if (solver == "greedy") {
      timed.result = greedy_pack(file.tracks, constraints, file.geometry);
    } else {
      timed.result = exhaustive_optimal(file.tracks, constraints, file.geometry,
                                        ExhaustiveOptions{o.oracle_budget});
    }
  } catch (const InstanceRejected& e) {
    throw CliFailure(kExitInfeasible, e.what());
  } catch (const OracleTooLarge& e) {
    throw CliFailure(kExitOracleTooLarge, e.what());
  } catch (const InvalidArgument& e) {
    throw CliFailure(kExitUsage, e.what());
  }
  timed.result.seed = o.seed;
  timed.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return timed;
}

ScheduleRecord make_record(const SolveResult& result, const SynopsisConstraints& constraints) {
  ScheduleRecord record;
  record.version = "tubepack " + std::string(kVersion);
  record.seed = result.seed;
  record.solver = result.solver;
  record.rng = result.rng.empty() ? "none" : result.rng;
  record.constraints = constraints;
  record.state = result.best_state;
  record.cost = result.best_cost;
  return record;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw CliFailure(kExitIoError, "cannot write '" + path + "'");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_run(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  const TrackFile file = load_instance(o, err);
  const SynopsisConstraints constraints = make_constraints(o, file);
  const std::string& solver = o.solvers.front();
  const TimedResult timed = solve(solver, o, file, constraints);

  try {
    save_schedule(make_record(timed.result, constraints), o.out_path);
  } catch (const Error& e) {
    throw CliFailure(kExitIoError, e.what());
  }

  // The report is derived from the schedule as written, not from memory.
  ScheduleRecord reloaded;
  try {
    reloaded = load_schedule(o.out_path, file.tracks);
  } catch (const Error& e) {
    throw CliFailure(kExitIoError, e.what());
  }
  SynopsisReport report =
      compute_report(file.tracks, reloaded.state, reloaded.constraints, file.geometry);
  if (report.frame_condensation_ratio != report.cost.et || report.cost != timed.result.best_cost) {
    throw CliFailure(kExitIoError, "report does not match the solver result");
  }
  report.solver = solver;
  report.seed = o.seed;
  report.wall_time = timed.wall_time;
  if (!o.report_path.empty()) {
    write_file(o.report_path, report_csv_header() + "\n" + report_csv_row(report) + "\n");
  }
  if (!o.trace_path.empty()) {
    std::string text = "iteration,temperature,current_total,best_total\n";
    for (const TraceEntry& t : timed.result.trace) {
      text += std::to_string(t.iteration) + "," + fmt(t.temperature) + "," +
              fmt(t.current_total) + "," + fmt(t.best_total) + "\n";
    }
    write_file(o.trace_path, text);
  }

  out << solver << ": t_last=" << report.t_last << " ec=" << report.cost.ec
      << " total=" << fmt(report.cost.total) << "\n";
  if (!report.feasible) {
    err << "error: " << report.cost.ec << " colliding pairs exceed n_max = "
        << constraints.n_max() << " (best schedule written)\n";
    return kExitNMaxExceeded;
  }
  return kExitOk;
}

int cmd_compare(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  const TrackFile file = load_instance(o, err);
  const SynopsisConstraints constraints = make_constraints(o, file);
  std::string table = "solver,total,ec,et,t_last,wall_time\n";
  std::string csv = report_csv_header() + "\n";
  for (const std::string& solver : o.solvers) {
    const TimedResult timed = solve(solver, o, file, constraints);
    const CostBreakdown& c = timed.result.best_cost;
    table += solver + "," + fmt(c.total) + "," + std::to_string(c.ec) + "," + fmt(c.et) + "," +
             std::to_string(c.t_last) + "," + fmt(timed.wall_time) + "\n";
    SynopsisReport report =
        compute_report(file.tracks, timed.result.best_state, constraints, file.geometry);
    report.solver = solver;
    report.seed = o.seed;
    report.wall_time = timed.wall_time;
    csv += report_csv_row(report) + "\n";
  }
  out << table;
  if (!o.report_path.empty()) write_file(o.report_path, csv);
  return kExitOk;
}

struct GenerateOptions {
  SyntheticSpec spec;
  std::string entries = "random";
  std::string topology = "planar";
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_generate(const GenerateOptions& g) {
  SyntheticSpec spec = g.spec;
  spec.entries = g.entries == "uniform" ? EntryPattern::kUniformSpread : EntryPattern::kRandom;
  spec.topology = topology_from_string(g.topology);
  try {
    save_tracks(generate_synthetic(spec, g.seed), g.out_path);
  } catch (const InvalidArgument& e) {
    throw CliFailure(kExitUsage, e.what());
  } catch (const Error& e) {
    throw CliFailure(kExitIoError, e.what());
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tubepack: temporal tube packing for video synopsis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  SolveOptions run_opts;
  CLI::App* run = app.add_subcommand("run", "solve one instance and write a schedule");
  add_solve_flags(*run, run_opts);
  run->add_option("--solver", run_opts.solvers, "solver")
      ->required()
      ->expected(1)
      ->check(CLI::IsMember(kSolverNames));
  run->add_option("--out", run_opts.out_path, "schedule output (JSON)")->required();
  run->add_option("--report", run_opts.report_path, "metrics output (CSV)");
  run->add_option("--trace", run_opts.trace_path, "solver trace output (CSV)");

  SolveOptions cmp_opts;
  CLI::App* compare = app.add_subcommand("compare", "run several solvers on one instance");
  add_solve_flags(*compare, cmp_opts);
  compare->add_option("--solver", cmp_opts.solvers, "solver (repeat)")
      ->required()
      ->check(CLI::IsMember(kSolverNames));
  compare->add_option("--report", cmp_opts.report_path, "metrics output (CSV)");

  GenerateOptions gen;
  CLI::App* generate = app.add_subcommand("generate", "write a synthetic track file");
  generate->add_option("--out", gen.out_path, "track file output (JSON)")->required();
  generate->add_option("--count", gen.spec.track_count, "number of tracks");
  generate->add_option("--width", gen.spec.frame_width, "frame width in px");
  generate->add_option("--height", gen.spec.frame_height, "frame height in px");
  generate->add_option("--duration", gen.spec.video_duration, "video length in frames");
  generate->add_option("--box-w", gen.spec.box_width, "box width in px");
  generate->add_option("--box-h", gen.spec.box_height, "box height in px");
  generate->add_option("--speed-min", gen.spec.speed_min, "px per frame");
  generate->add_option("--speed-max", gen.spec.speed_max, "px per frame");
  generate->add_option("--lanes", gen.spec.lanes, "lane count (0: one per track)");
  generate->add_option("--entries", gen.entries, "entry times")
      ->check(CLI::IsMember({"uniform", "random"}));
  generate->add_flag("--both-directions", gen.spec.both_directions, "mix travel directions");
  generate->add_option("--topology", gen.topology, "frame topology")
      ->check(CLI::IsMember({"planar", "cyclic_x"}));
  generate->add_option("--cyclic-frames", gen.spec.cyclic_track_frames,
                       "frames per track on cyclic_x (0: one lap)");
  generate->add_option("--seed", gen.seed, "RNG seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts, out, err);
    if (compare->parsed()) {
      if (cmp_opts.solvers.size() < 2) {
        err << "error: compare needs at least two --solver flags\n";
        return kExitUsage;
      }
      return cmd_compare(cmp_opts, out, err);
    }
    return cmd_generate(gen);
  } catch (const CliFailure& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseFailure;
  }
}

}  // namespace tubepack
