#include "tubepack/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "placement_model.hpp"
#include "tubepack/errors.hpp"

namespace tubepack {
namespace {

using detail::IncrementalState;
using detail::PlacementModel;

constexpr int kCalibrationProposals = 100;
constexpr double kTemperatureFloor = 1e-6;

bool order_respected(const PlacementModel& model, std::span<const int> starts) {
  const auto& ranked = model.ranked();
  for (std::size_t r = 1; r < ranked.size(); ++r) {
    if (starts[ranked[r]] < starts[ranked[r - 1]]) return false;
  }
  return true;
}

std::vector<int> greedy_starts(const PlacementModel& model) {
  const std::size_t n = model.size();
  const auto& ranked = model.ranked();
  // Latest start of rank r that still leaves every later rank a feasible start.
  std::vector<int> suffix_last(n);
  int bound = std::numeric_limits<int>::max();
  for (std::size_t r = n; r-- > 0;) {
    bound = std::min(bound, model.max_start(ranked[r]));
    suffix_last[r] = bound;
  }

  std::vector<int> starts(n, 0);
  std::vector<std::size_t> placed;
  placed.reserve(n);
  int previous = 1;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t k = ranked[r];
    int first = 1;
    int last = model.max_start(k);
    if (model.constraints().preserve_order()) {
      first = previous;
      last = suffix_last[r];
    }
    int best_start = first;
    int best_hits = std::numeric_limits<int>::max();
    for (int s = first; s <= last; ++s) {
      int hits = 0;
      for (std::size_t j : placed) {
        if (model.collide(k, s, j, starts[j]) && ++hits >= best_hits) break;
      }
      if (hits < best_hits) {
        best_hits = hits;
        best_start = s;
        if (hits == 0) break;
      }
    }
    starts[k] = best_start;
    placed.push_back(k);
    previous = best_start;
  }
  return starts;
}

std::vector<int> clamped_original(const PlacementModel& model) {
  std::vector<int> starts(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    starts[i] = std::min(model.tube(i).original_start, model.max_start(i));
  }
  return starts;
}

std::vector<int> initial_starts(const PlacementModel& model) {
  std::vector<int> starts = clamped_original(model);
  if (model.constraints().preserve_order() && !order_respected(model, starts)) {
    return greedy_starts(model);
  }
  return starts;
}

SolveResult make_result(const PlacementModel& model, std::span<const int> starts,
                        const CostBreakdown& cost, std::string solver) {
  SolveResult result;
  result.best_state = model.state_of(starts);
  result.best_cost = cost;
  result.feasible = cost.ec <= model.constraints().n_max();
  result.solver = std::move(solver);
  return result;
}

double calibrate_temperature(const PlacementModel& model, const std::vector<int>& starts,
                             MoveKernel kernel, Rng& rng) {
  IncrementalState probe(model, starts);
  std::vector<double> totals;
  totals.reserve(kCalibrationProposals);
  for (int p = 0; p < kCalibrationProposals; ++p) {
    const detail::Move move = detail::propose_index_move(model, starts, rng, kernel);
    totals.push_back(probe.trial(move.tube, move.start).total);
  }
  const double mean =
      std::accumulate(totals.begin(), totals.end(), 0.0) / static_cast<double>(totals.size());
  double var = 0.0;
  for (double t : totals) var += (t - mean) * (t - mean);
  var /= static_cast<double>(totals.size());
  return std::max(std::sqrt(var), kTemperatureFloor);
}

}  // namespace

SynopsisState initial_state(std::span<const Tube> tubes, const SynopsisConstraints& constraints,
                            const FrameGeometry& geom) {
  const PlacementModel model(tubes, constraints, geom);
  return model.state_of(initial_starts(model));
}

StartWindow feasible_window(std::span<const Tube> tubes, const SynopsisState& state,
                            const SynopsisConstraints& constraints, const TubeId& id) {
  const auto it = std::find_if(tubes.begin(), tubes.end(), [&](const Tube& t) { return t.id == id; });
  if (it == tubes.end()) throw InvalidArgument("unknown tube '" + id + "'");
  const FrameGeometry unused{1.0, 1.0, 1, Topology::kPlanar};
  const PlacementModel model(tubes, constraints, unused);
  const std::vector<int> starts = model.starts_of(state);
  const auto [first, last] =
      model.window(static_cast<std::size_t>(it - tubes.begin()), starts);
  return {first, last};
}

SynopsisState propose_move(const SynopsisState& state, std::span<const Tube> tubes,
                           const SynopsisConstraints& constraints, Rng& rng, MoveKernel kernel) {
  const FrameGeometry unused{1.0, 1.0, 1, Topology::kPlanar};
  const PlacementModel model(tubes, constraints, unused);
  std::vector<int> starts = model.starts_of(state);
  const detail::Move move = detail::propose_index_move(model, starts, rng, kernel);
  starts[move.tube] = move.start;
  return model.state_of(starts);
}

bool metropolis_accept(double delta, double temperature, Rng& rng) {
  if (delta <= 0.0) return true;
  return rng.uniform01() < std::exp(-delta / temperature);
}

SolveResult anneal(std::span<const Tube> tubes, const SynopsisConstraints& constraints,
                   const AnnealParams& params, const FrameGeometry& geom) {
  const PlacementModel model(tubes, constraints, geom);
  if (!(params.cooling_factor > 0.0 && params.cooling_factor < 1.0)) {
    throw InvalidArgument("cooling factor must lie in (0, 1)");
  }
  if (!(params.min_temperature > 0.0)) throw InvalidArgument("min temperature must be positive");
  if (params.max_iterations < 1) throw InvalidArgument("max iterations must be >= 1");
  if (params.steps_per_temperature && *params.steps_per_temperature < 1) {
    throw InvalidArgument("steps per temperature must be >= 1");
  }
  if (params.initial_temperature && !(*params.initial_temperature > params.min_temperature)) {
    throw InvalidArgument("initial temperature must exceed the min temperature");
  }

  Rng rng(params.seed);
  std::vector<int> starts = params.warm_start == WarmStart::kGreedy ? greedy_starts(model)
                                                                    : initial_starts(model);
  double temperature = 0.0;
  if (params.initial_temperature) {
    temperature = *params.initial_temperature;
  } else {
    temperature = calibrate_temperature(model, starts, params.kernel, rng);
    // Keep at least a few cooling levels when the landscape around the start is flat.
    if (temperature <= params.min_temperature) temperature = 10.0 * params.min_temperature;
  }
  const std::int64_t steps = params.steps_per_temperature
                                  ? *params.steps_per_temperature
                                  : 50 * static_cast<std::int64_t>(model.size());

  IncrementalState current(model, std::move(starts));
  CostBreakdown current_cost = current.cost();
  CostBreakdown best_cost = current_cost;
  std::vector<int> best_starts = current.starts();

  SolveResult result;
  std::int64_t iteration = 0;
  while (temperature >= params.min_temperature && iteration < params.max_iterations) {
    for (std::int64_t step = 0; step < steps && iteration < params.max_iterations; ++step) {
      ++iteration;
      const detail::Move move =
          detail::propose_index_move(model, current.starts(), rng, params.kernel);
      if (move.start == current.starts()[move.tube]) continue;
      const CostBreakdown candidate = current.trial(move.tube, move.start);
      if (!metropolis_accept(candidate.total - current_cost.total, temperature, rng)) continue;
      current.commit();
      current_cost = candidate;
      if (current_cost.total < best_cost.total) {
        best_cost = current_cost;
        best_starts = current.starts();
      }
    }
    result.trace.push_back({iteration, temperature, current_cost.total, best_cost.total});
    temperature *= params.cooling_factor;
  }

  SolveResult out = make_result(model, best_starts, best_cost, "sa");
  out.trace = std::move(result.trace);
  out.iterations_used = iteration;
  out.rng = std::string(Rng::kAlgorithm);
  out.seed = params.seed;
  return out;
}

SolveResult greedy_pack(std::span<const Tube> tubes, const SynopsisConstraints& constraints,
                        const FrameGeometry& geom) {
  const PlacementModel model(tubes, constraints, geom);
  const std::vector<int> starts = greedy_starts(model);
  const IncrementalState state(model, starts);
  SolveResult result = make_result(model, starts, state.cost(), "greedy");
  result.iterations_used = static_cast<std::int64_t>(model.size());
  result.trace.push_back({result.iterations_used, 0.0, state.cost().total, state.cost().total});
  return result;
}

namespace {

class ExhaustiveSearch {
 public:
  explicit ExhaustiveSearch(const PlacementModel& model) : model_(model) {
    order_.resize(model.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t a, std::size_t b) { return model.tube(a).id < model.tube(b).id; });
    // Largest duration among tubes at depth >= d.
    remaining_max_duration_.assign(order_.size() + 1, 0);
    for (std::size_t d = order_.size(); d-- > 0;) {
      remaining_max_duration_[d] =
          std::max(remaining_max_duration_[d + 1], model.duration(order_[d]));
    }
    starts_.assign(model.size(), 0);
  }

  void run() { descend(0, 0, 0); }

  bool found() const { return found_; }
  const std::vector<int>& best_starts() const { return best_starts_; }
  const CostBreakdown& best_cost() const { return best_cost_; }
  std::int64_t leaves() const { return leaves_; }
  std::vector<TraceEntry>& trace() { return trace_; }

 private:
  void descend(std::size_t depth, int ec, int t_last) {
    if (depth == order_.size()) {
      ++leaves_;
      const CostBreakdown cost = model_.cost(ec, t_last);
      if (!found_ || cost.total < best_cost_.total) {
        found_ = true;
        best_cost_ = cost;
        best_starts_ = starts_;
        trace_.push_back({leaves_, 0.0, cost.total, cost.total});
      }
      return;
    }
    const std::size_t k = order_[depth];
    for (int s = 1; s <= model_.max_start(k); ++s) {
      if (!order_ok(depth, k, s)) continue;
      int hits = 0;
      for (std::size_t d = 0; d < depth; ++d) {
        const std::size_t j = order_[d];
        if (model_.collide(k, s, j, starts_[j])) ++hits;
      }
      const int new_last = std::max(t_last, s + model_.duration(k) - 1);
      const CostBreakdown bound =
          model_.cost(ec + hits, std::max(new_last, remaining_max_duration_[depth + 1]));
      if (found_ && bound.total >= best_cost_.total) continue;
      starts_[k] = s;
      descend(depth + 1, ec + hits, new_last);
    }
    starts_[k] = 0;
  }

  bool order_ok(std::size_t depth, std::size_t k, int s) const {
    if (!model_.constraints().preserve_order()) return true;
    for (std::size_t d = 0; d < depth; ++d) {
      const std::size_t j = order_[d];
      const bool j_before = model_.rank_of(j) < model_.rank_of(k);
      if (j_before ? starts_[j] > s : starts_[j] < s) return false;
    }
    return true;
  }

  const PlacementModel& model_;
  std::vector<std::size_t> order_;
  std::vector<int> remaining_max_duration_;
  std::vector<int> starts_;
  std::vector<int> best_starts_;
  CostBreakdown best_cost_;
  bool found_ = false;
  std::int64_t leaves_ = 0;
  std::vector<TraceEntry> trace_;
};

}  // namespace

SolveResult exhaustive_optimal(std::span<const Tube> tubes, const SynopsisConstraints& constraints,
                               const FrameGeometry& geom, const ExhaustiveOptions& options) {
  const PlacementModel model(tubes, constraints, geom);
  long double states = 1.0L;
  for (std::size_t i = 0; i < model.size(); ++i) {
    states *= static_cast<long double>(model.max_start(i));
    if (states > static_cast<long double>(options.max_states)) {
      throw OracleTooLarge("exhaustive search would visit more than " +
                           std::to_string(options.max_states) + " states");
    }
  }
  ExhaustiveSearch search(model);
  search.run();
  if (!search.found()) throw InstanceRejected("no order-preserving placement exists");
  SolveResult result = make_result(model, search.best_starts(), search.best_cost(), "exhaustive");
  result.iterations_used = search.leaves();
  result.trace = std::move(search.trace());
  return result;
}

}  // namespace tubepack
