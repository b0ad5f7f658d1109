#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tubepack/cost.hpp"
#include "tubepack/geometry.hpp"
#include "tubepack/rng.hpp"
#include "tubepack/tube.hpp"

namespace tubepack {

enum class WarmStart {
  kOriginal,  // original configuration, clamped into t_max
  kGreedy,    // greedy_pack result
};

enum class MoveKernel {
  // Resample the start uniformly over the tube's feasible window.
  kUniform,
  // Half of the proposals resample over the whole window, half over the part of the window at
  // or before the current start.
  kUniformWithDrop,
};

struct AnnealParams {
  // nullopt: standard deviation of the total over 100 random proposals from the initial state.
  std::optional<double> initial_temperature;
  double cooling_factor = 0.95;
  // nullopt: 50 * number of tubes.
  std::optional<int> steps_per_temperature;
  double min_temperature = 1e-4;
  std::int64_t max_iterations = 1'000'000;
  std::uint64_t seed = 0;
  WarmStart warm_start = WarmStart::kOriginal;
  MoveKernel kernel = MoveKernel::kUniformWithDrop;
};

struct TraceEntry {
  std::int64_t iteration = 0;
  double temperature = 0.0;
  double current_total = 0.0;
  double best_total = 0.0;

  bool operator==(const TraceEntry&) const = default;
};

struct SolveResult {
  SynopsisState best_state;
  CostBreakdown best_cost;
  bool feasible = false;  // best_cost.ec <= n_max
  std::vector<TraceEntry> trace;
  std::int64_t iterations_used = 0;
  std::string solver;
  std::string rng;
  std::uint64_t seed = 0;

  bool operator==(const SolveResult&) const = default;
};

// Original configuration clamped so every tube ends by t_max. Falls back to greedy_pack when
// preserve_order is set and clamping breaks the order. Throws InstanceRejected.
SynopsisState initial_state(std::span<const Tube> tubes, const SynopsisConstraints& constraints,
                            const FrameGeometry& geom);

// Feasible start window [first, last] of one tube given the others' current starts.
struct StartWindow {
  int first = 1;
  int last = 1;
};

StartWindow feasible_window(std::span<const Tube> tubes, const SynopsisState& state,
                            const SynopsisConstraints& constraints, const TubeId& id);

// One random single-tube move.
SynopsisState propose_move(const SynopsisState& state, std::span<const Tube> tubes,
                           const SynopsisConstraints& constraints, Rng& rng,
                           MoveKernel kernel = MoveKernel::kUniformWithDrop);

// Metropolis rule: always accept delta <= 0, otherwise accept with probability exp(-delta / T).
// Draws one uniform only when delta > 0.
bool metropolis_accept(double delta, double temperature, Rng& rng);

SolveResult anneal(std::span<const Tube> tubes, const SynopsisConstraints& constraints,
                   const AnnealParams& params, const FrameGeometry& geom);

// First-fit in rank order: earliest collision-free start, otherwise the start adding the
// fewest colliding pairs.
SolveResult greedy_pack(std::span<const Tube> tubes, const SynopsisConstraints& constraints,
                        const FrameGeometry& geom);

struct ExhaustiveOptions {
  std::uint64_t max_states = 10'000'000;
};

// Exact minimizer of the total by enumeration (ties: lexicographically smallest start vector
// with tubes ordered by id). Throws OracleTooLarge when the product of window sizes exceeds
// the budget.
SolveResult exhaustive_optimal(std::span<const Tube> tubes, const SynopsisConstraints& constraints,
                               const FrameGeometry& geom, const ExhaustiveOptions& options = {});

}  // namespace tubepack
