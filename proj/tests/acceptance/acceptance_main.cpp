// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "test_support.hpp"
#include "tubepack/cli.hpp"
#include "tubepack/collision.hpp"
#include "tubepack/cost.hpp"
#include "tubepack/dataset_io.hpp"
#include "tubepack/errors.hpp"
#include "tubepack/optimizer.hpp"

using namespace tubepack;
using testing::still_tube;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Random integer-pixel tube driven by the portable generator.
Tube random_tube(Rng& rng, const std::string& id, const FrameGeometry& g, int min_duration,
                 int max_duration, int min_box, int max_box) {
  const int w = static_cast<int>(g.width);
  const int h = static_cast<int>(g.height);
  auto pick = [&](int lo, int hi) { return static_cast<int>(rng.uniform_int(lo, hi)); };
  const int duration = pick(min_duration, max_duration);
  const int bw = pick(min_box, std::min(max_box, w));
  const int bh = pick(min_box, std::min(max_box, h));
  int x = g.topology == Topology::kCyclicX ? pick(0, w - 1) : pick(0, w - bw);
  int y = pick(0, h - bh);
  const int vx = pick(-2, 2);
  const int vy = pick(-1, 1);
  Tube t{id, pick(1, g.duration - duration + 1), {}};
  for (int k = 0; k < duration; ++k) {
    t.boxes.push_back({double(x), double(y), double(bw), double(bh)});
    x += vx;
    x = g.topology == Topology::kCyclicX ? ((x % w) + w) % w : std::clamp(x, 0, w - bw);
    y = std::clamp(y + vy, 0, h - bh);
  }
  return t;
}

std::vector<Tube> random_instance(Rng& rng, const FrameGeometry& g, int count, int min_d,
                                  int max_d, int min_box, int max_box) {
  std::vector<Tube> tubes;
  for (int i = 0; i < count; ++i) {
    tubes.push_back(random_tube(rng, "t" + std::to_string(i), g, min_d, max_d, min_box, max_box));
  }
  return tubes;
}

SynopsisState random_placement(Rng& rng, const std::vector<Tube>& tubes, int horizon) {
  SynopsisState s;
  for (const Tube& t : tubes) {
    s.placements[t.id] = static_cast<int>(rng.uniform_int(1, horizon - t.duration() + 1));
  }
  return s;
}

Outcome oracle_optimality() {
  const FrameGeometry g{40, 40, 20, Topology::kPlanar};
  const SynopsisConstraints c(20, 0, 1.0, false, 10.0, 1.0);
  Rng rng(2024);
  int exact = 0;
  int within = 0;
  double oracle_time = 0.0;
  for (int n = 0; n < 50; ++n) {
    const auto tubes = random_instance(rng, g, 3, 3, 6, 8, 25);
    const auto t0 = Clock::now();
    const SolveResult ex = exhaustive_optimal(tubes, c, g);
    oracle_time += seconds_since(t0);
    AnnealParams p;
    p.seed = static_cast<std::uint64_t>(n);
    const SolveResult sa = anneal(tubes, c, p, g);
    exact += sa.best_cost.total == ex.best_cost.total ? 1 : 0;
    within += sa.best_cost.total <= 1.10 * ex.best_cost.total ? 1 : 0;
  }
  return {exact >= 45 && within == 50 && oracle_time < 10.0,
          fmt("exact %d/50 (need >= 45), within 10%% %d/50, oracle %.3f s (< 10 s)", exact,
              within, oracle_time)};
}

Outcome collision_equivalence() {
  Rng rng(77);
  const auto t0 = Clock::now();
  int agree = 0;
  long total_pairs = 0;
  const double thresholds[] = {0.0, 1.0, 25.0, 100.0};
  for (int n = 0; n < 200; ++n) {
    const Topology topo = n % 2 == 0 ? Topology::kPlanar : Topology::kCyclicX;
    const int t_v = static_cast<int>(rng.uniform_int(20, 500));
    const FrameGeometry g{double(rng.uniform_int(40, 200)), double(rng.uniform_int(40, 200)), t_v,
                          topo};
    const int count = static_cast<int>(rng.uniform_int(2, 50));
    const auto tubes = random_instance(rng, g, count, 1, std::min(t_v, 120), 4, 40);
    const SynopsisState s = random_placement(rng, tubes, t_v);
    const double a = thresholds[n % 4];
    const int indexed = count_collisions(tubes, s, a, g).count;
    const int naive = oracle::naive_collision_count(tubes, s.placements, a, g);
    agree += indexed == naive ? 1 : 0;
    total_pairs += naive;
  }
  const double elapsed = seconds_since(t0);
  return {agree == 200 && elapsed < 60.0,
          fmt("%d/200 instances identical (%ld colliding pairs total), %.2f s (< 60 s)", agree,
              total_pairs, elapsed)};
}

Outcome unit_fidelity() {
  const FrameGeometry p{100, 100, 100, Topology::kPlanar};
  const FrameGeometry cx{100, 100, 100, Topology::kCyclicX};
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const char* name) {
    if (!ok) failed.emplace_back(name);
  };
  expect(box_overlap_area({0, 0, 10, 10}, {5, 0, 10, 10}, p) == 50.0, "overlap 50");
  expect(box_overlap_area({2, 3, 4, 5}, {2, 3, 4, 5}, p) == 20.0, "overlap 20");
  expect(box_overlap_area({0, 0, 10, 10}, {20, 20, 5, 5}, p) == 0.0, "overlap 0");
  expect(box_overlap_area({95, 0, 10, 10}, {0, 0, 10, 10}, cx) == 50.0, "torus seam 50");

  const SynopsisConstraints unit(100, 0, 1.0, false, 1.0, 1.0);
  expect(make_cost(2, 50, 100, unit).total == 2.5, "total 2.5");
  const SynopsisConstraints w(100, 0, 1.0, false, 3.0, 0.75);
  expect(make_cost(0, 40, 100, w).total == 0.75 * 0.4, "total w1*et");

  const BoundingBox box{0, 0, 10, 10};
  const std::vector<Tube> single{still_tube("a", 1, 5, box)};
  expect(exhaustive_optimal(single, unit, p).best_cost.total == 0.05, "total 0.05");
  expect(total_cost({{{"a", 1}}}, single, unit, p).total == 0.05, "total_cost 0.05");
  const std::vector<Tube> twins{still_tube("a", 1, 5, box), still_tube("b", 1, 5, box)};
  const SolveResult two =
      exhaustive_optimal(twins, SynopsisConstraints(100, 0, 50.0, false, 100.0, 1.0), p);
  expect(two.best_cost.total == 0.10, "total 0.10");
  expect(two.best_state == SynopsisState{{{"a", 1}, {"b", 6}}}, "starts {1, 6}");

  std::string detail = "10 worked examples exact";
  for (const auto& f : failed) detail += "; FAILED " + f;
  return {failed.empty(), detail};
}

bool bit_identical(const CostBreakdown& a, const CostBreakdown& b) {
  return a.ec == b.ec && a.t_last == b.t_last &&
         std::bit_cast<std::uint64_t>(a.et) == std::bit_cast<std::uint64_t>(b.et) &&
         std::bit_cast<std::uint64_t>(a.total) == std::bit_cast<std::uint64_t>(b.total);
}

Outcome torus_invariance() {
  Rng rng(4242);
  int identical = 0;
  int with_collisions = 0;
  for (int n = 0; n < 100; ++n) {
    const FrameGeometry g{double(rng.uniform_int(30, 120)), double(rng.uniform_int(30, 90)),
                          static_cast<int>(rng.uniform_int(30, 120)), Topology::kCyclicX};
    const auto tubes = random_instance(rng, g, static_cast<int>(rng.uniform_int(2, 25)), 1,
                                       std::min(g.duration, 40), 4, 30);
    const SynopsisConstraints c(g.duration, 0, double(rng.uniform_int(0, 60)), false, 1.0, 1.0);
    const SynopsisState s = random_placement(rng, tubes, g.duration);
    const int delta = static_cast<int>(rng.uniform_int(1, static_cast<int>(g.width) - 1));
    auto moved = tubes;
    for (Tube& t : moved) {
      for (BoundingBox& b : t.boxes) b.x_min = std::fmod(b.x_min + delta, g.width);
    }
    const CostBreakdown before = total_cost(s, tubes, c, g);
    identical += bit_identical(before, total_cost(s, moved, c, g)) ? 1 : 0;
    with_collisions += before.ec > 0 ? 1 : 0;
  }
  return {identical == 100, fmt("%d/100 bit-identical (%d instances with collisions)", identical,
                                with_collisions)};
}

Outcome metropolis_statistics() {
  Rng gen(99);
  const FrameGeometry g{60, 60, 60, Topology::kPlanar};
  const auto tubes = random_instance(gen, g, 10, 5, 20, 10, 30);
  const SynopsisConstraints c(60, 0, 1.0, false, 1.0, 1.0);
  const SynopsisState frozen = original_state(tubes);
  const double base = total_cost(frozen, tubes, c, g).total;
  const double temperature = 1.0;

  Rng proposals(1);
  Rng acceptance(2);
  int trials = 0;
  int accepted = 0;
  double expected = 0.0;
  while (trials < 10000) {
    const SynopsisState next = propose_move(frozen, tubes, c, proposals);
    const double delta = total_cost(next, tubes, c, g).total - base;
    if (delta <= 0.0) continue;
    ++trials;
    expected += std::exp(-delta / temperature);
    accepted += metropolis_accept(delta, temperature, acceptance) ? 1 : 0;
  }
  const double rate = accepted / 10000.0;
  const double mean = expected / 10000.0;
  return {std::abs(rate - mean) <= 0.03,
          fmt("empirical %.4f vs analytic %.4f over 10000 uphill proposals (|diff| %.4f <= 0.03)",
              rate, mean, std::abs(rate - mean))};
}

TrackFile highway() {
  SyntheticSpec s;
  s.track_count = 20;
  s.frame_width = 300;  // 10 px/frame over 290 px -> 30 frames
  s.frame_height = 400;
  s.video_duration = 600;
  s.box_width = 10;
  s.box_height = 10;
  s.speed_min = s.speed_max = 10.0;
  s.entries = EntryPattern::kUniformSpread;
  return generate_synthetic(s, 1);
}

Outcome condensation() {
  const TrackFile f = highway();
  bool shape_ok = f.tracks.size() == 20;
  for (const Tube& t : f.tracks) shape_ok = shape_ok && t.duration() == 30;
  const SynopsisConstraints c(600, 0, 1.0);
  const auto t0 = Clock::now();
  const SolveResult greedy = greedy_pack(f.tracks, c, f.geometry);
  AnnealParams p;
  p.seed = 1;
  const SolveResult sa = anneal(f.tracks, c, p, f.geometry);
  const double elapsed = seconds_since(t0);
  const bool ok = shape_ok && greedy.best_cost.t_last <= 60 && greedy.best_cost.ec == 0 &&
                  sa.best_cost.t_last == 30 && sa.best_cost.ec == 0 && elapsed < 30.0;
  return {ok, fmt("greedy t_last %d ec %d, anneal t_last %d ec %d (need 30, 0), %.2f s (< 30 s)",
                  greedy.best_cost.t_last, greedy.best_cost.ec, sa.best_cost.t_last,
                  sa.best_cost.ec, elapsed)};
}

Outcome wrap_merge_round_trip() {
  SyntheticSpec s;
  s.track_count = 8;
  s.frame_width = 200;
  s.frame_height = 160;
  s.video_duration = 400;
  s.box_width = 12;
  s.box_height = 12;
  s.speed_min = 2;
  s.speed_max = 5;
  s.both_directions = true;
  s.topology = Topology::kCyclicX;
  s.cyclic_track_frames = 150;
  const TrackFile original = generate_synthetic(s, 11);

  TrackFile split{original.geometry, {}};
  int cuts = 0;
  for (const Tube& t : original.tracks) {
    std::size_t cut = 0;
    for (std::size_t k = 1; k < t.boxes.size() && cut == 0; ++k) {
      const double jump = std::abs(t.boxes[k].x_min - t.boxes[k - 1].x_min);
      if (jump > s.frame_width / 2) cut = k;
    }
    if (cut == 0) {
      split.tracks.push_back(t);
      continue;
    }
    ++cuts;
    split.tracks.push_back({t.id, t.original_start, {t.boxes.begin(), t.boxes.begin() + long(cut)}});
    split.tracks.push_back(
        {t.id + "_b", t.original_start + int(cut), {t.boxes.begin() + long(cut), t.boxes.end()}});
  }
  const MergeOutcome once = merge_wrapped_tracks(split);
  const MergeOutcome twice = merge_wrapped_tracks(once.tracks);
  const bool exact = once.tracks == original;
  const bool idempotent = twice.tracks == once.tracks;
  return {exact && idempotent && cuts > 0,
          fmt("%d seam splits, tube-for-tube equal: %s, idempotent: %s", cuts,
              exact ? "yes" : "no", idempotent ? "yes" : "no")};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const auto tracks = testing::temp_path("acceptance_highway.json");
  save_tracks(highway(), tracks);
  std::ostringstream sink;
  auto run = [&](const std::string& seed, const std::string& tag) {
    const auto out = testing::temp_path("acceptance_schedule_" + tag + ".json");
    const auto trace = testing::temp_path("acceptance_trace_" + tag + ".csv");
    const int code = run_cli({"run", "--tracks", tracks.string(), "--solver", "sa", "--seed", seed,
                              "--out", out.string(), "--trace", trace.string()},
                             sink, sink);
    return std::tuple{code, slurp(out), slurp(trace)};
  };
  const auto [c1, s1, t1] = run("17", "a");
  const auto [c2, s2, t2] = run("17", "b");
  const auto [c3, s3, t3] = run("18", "c");
  const bool ok = c1 == kExitOk && c2 == kExitOk && c3 == kExitOk && !s1.empty() && s1 == s2 &&
                  t1 == t2 && t1 != t3;
  return {ok, fmt("same seed: schedules %s, traces %s; new seed changes trace: %s",
                  s1 == s2 ? "byte-identical" : "DIFFER", t1 == t2 ? "identical" : "DIFFER",
                  t1 != t3 ? "yes" : "no")};
}

Outcome hard_constraint_safety() {
  Rng rng(31337);
  int instances = 0;
  int states = 0;
  int violations = 0;
  int oracle_runs = 0;
  auto check = [&](const SynopsisState& s, const std::vector<Tube>& tubes,
                   const SynopsisConstraints& c, const std::string& solver) {
    ScheduleRecord r;
    r.version = "acceptance";
    r.solver = solver;
    r.rng = "mt19937_64";
    r.constraints = c;
    r.state = s;
    const ScheduleRecord emitted = parse_schedule(dump_schedule(r));
    ++states;
    violations += validate_state(emitted.state, tubes, emitted.constraints).ok() ? 0 : 1;
  };
  for (int n = 0; n < 1000; ++n) {
    const Topology topo = n % 3 == 0 ? Topology::kCyclicX : Topology::kPlanar;
    const FrameGeometry g{double(rng.uniform_int(20, 80)), double(rng.uniform_int(20, 80)),
                          static_cast<int>(rng.uniform_int(6, 40)), topo};
    const auto tubes = random_instance(rng, g, static_cast<int>(rng.uniform_int(1, 6)), 1,
                                       std::min(g.duration, 15), 3, 30);
    int longest = 0;
    for (const Tube& t : tubes) longest = std::max(longest, t.duration());
    const int t_max = static_cast<int>(rng.uniform_int(longest, g.duration + 5));
    const SynopsisConstraints c(t_max, static_cast<int>(rng.uniform_int(0, 2)),
                                double(rng.uniform_int(0, 50)), rng.uniform01() < 0.5,
                                double(rng.uniform_int(0, 10)), double(rng.uniform_int(1, 5)));
    ++instances;
    check(initial_state(tubes, c, g), tubes, c, "initial");
    check(greedy_pack(tubes, c, g).best_state, tubes, c, "greedy");
    AnnealParams p;
    p.seed = static_cast<std::uint64_t>(n);
    p.max_iterations = 3000;
    check(anneal(tubes, c, p, g).best_state, tubes, c, "sa");
    p.warm_start = WarmStart::kGreedy;
    p.kernel = MoveKernel::kUniform;
    check(anneal(tubes, c, p, g).best_state, tubes, c, "sa");
    try {
      check(exhaustive_optimal(tubes, c, g, ExhaustiveOptions{200'000}).best_state, tubes, c,
            "exhaustive");
      ++oracle_runs;
    } catch (const OracleTooLarge&) {
    }
  }
  return {instances >= 1000 && violations == 0,
          fmt("%d instances, %d emitted schedules (%d exhaustive), %d violations", instances,
              states, oracle_runs, violations)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 oracle optimality", oracle_optimality},
      {"AC2 collision-engine equivalence", collision_equivalence},
      {"AC3 collision/cost unit fidelity", unit_fidelity},
      {"AC4 torus invariance", torus_invariance},
      {"AC5 Metropolis acceptance statistics", metropolis_statistics},
      {"AC6 condensation at desk scale", condensation},
      {"AC7 wrap-merge round trip", wrap_merge_round_trip},
      {"AC8 determinism", determinism},
      {"AC9 hard-constraint safety", hard_constraint_safety},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
