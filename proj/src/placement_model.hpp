#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tubepack/cost.hpp"
#include "tubepack/geometry.hpp"
#include "tubepack/optimizer.hpp"
#include "tubepack/rng.hpp"
#include "tubepack/tube.hpp"

namespace tubepack::detail {

// Index-based view of an admitted instance shared by the solvers. Pair collision decisions
// depend only on the relative offset of the two starts and are memoized per pair.
class PlacementModel {
 public:
  PlacementModel(std::span<const Tube> tubes, const SynopsisConstraints& constraints,
                 const FrameGeometry& geom);

  std::size_t size() const { return tubes_.size(); }
  const Tube& tube(std::size_t i) const { return tubes_[i]; }
  int duration(std::size_t i) const { return tubes_[i].duration(); }
  int max_start(std::size_t i) const { return constraints_.t_max() - duration(i) + 1; }
  const SynopsisConstraints& constraints() const { return constraints_; }
  const FrameGeometry& geometry() const { return geom_; }

  // Tube indices by (original_start, id) and the inverse permutation.
  const std::vector<std::size_t>& ranked() const { return ranked_; }
  std::size_t rank_of(std::size_t i) const { return rank_of_[i]; }

  bool collide(std::size_t i, int start_i, std::size_t j, int start_j) const;

  CostBreakdown cost(int ec, int t_last) const {
    return make_cost(ec, t_last, geom_.duration, constraints_);
  }

  std::vector<int> starts_of(const SynopsisState& state) const;
  SynopsisState state_of(std::span<const int> starts) const;

  // Window for tube i honoring t_max and, when set, the rank neighbours' starts.
  std::pair<int, int> window(std::size_t i, std::span<const int> starts) const;

 private:
  std::span<const Tube> tubes_;
  SynopsisConstraints constraints_;
  FrameGeometry geom_;
  std::vector<std::size_t> ranked_;
  std::vector<std::size_t> rank_of_;
  std::vector<double> y_lo_;
  std::vector<double> y_hi_;
  // Per unordered pair: lazily filled decision per offset (0 unknown, 1 clear, 2 collide).
  mutable std::vector<std::vector<std::uint8_t>> offset_memo_;
  mutable std::size_t memo_bytes_ = 0;
};

// Collision-pair matrix and t_last maintained under single-tube moves.
class IncrementalState {
 public:
  IncrementalState(const PlacementModel& model, std::vector<int> starts);

  const std::vector<int>& starts() const { return starts_; }
  int ec() const { return ec_; }
  int t_last() const { return t_last_; }
  CostBreakdown cost() const { return model_->cost(ec_, t_last_); }

  // Cost after moving tube k to new_start; remembered until the next trial or commit.
  CostBreakdown trial(std::size_t k, int new_start);
  void commit();

 private:
  const PlacementModel* model_;
  std::vector<int> starts_;
  std::vector<std::uint8_t> pair_;  // n x n collision flags
  int ec_ = 0;
  int t_last_ = 0;

  std::size_t trial_tube_ = 0;
  int trial_start_ = 0;
  int trial_ec_ = 0;
  int trial_t_last_ = 0;
  std::vector<std::uint8_t> trial_row_;
};

struct Move {
  std::size_t tube = 0;
  int start = 1;
};

Move propose_index_move(const PlacementModel& model, std::span<const int> starts, Rng& rng,
                        MoveKernel kernel);

}  // namespace tubepack::detail
