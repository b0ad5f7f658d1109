#include "placement_model.hpp"

#include <algorithm>

#include "tubepack/collision.hpp"
#include "tubepack/errors.hpp"

namespace tubepack::detail {
namespace {

constexpr std::size_t kMaxMemoTubes = 1024;
constexpr std::size_t kMaxMemoBytes = std::size_t{64} << 20;

std::size_t pair_slot(std::size_t i, std::size_t j, std::size_t n) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

}  // namespace

PlacementModel::PlacementModel(std::span<const Tube> tubes, const SynopsisConstraints& constraints,
                               const FrameGeometry& geom)
    : tubes_(tubes), constraints_(constraints), geom_(geom), ranked_(rank_order(tubes)) {
  admit_instance(tubes, constraints);
  rank_of_.resize(tubes.size());
  for (std::size_t r = 0; r < ranked_.size(); ++r) rank_of_[ranked_[r]] = r;
  y_lo_.reserve(tubes.size());
  y_hi_.reserve(tubes.size());
  for (const Tube& tube : tubes) {
    double lo = tube.boxes.front().y_min;
    double hi = lo + tube.boxes.front().height;
    for (const BoundingBox& b : tube.boxes) {
      lo = std::min(lo, b.y_min);
      hi = std::max(hi, b.y_min + b.height);
    }
    y_lo_.push_back(lo);
    y_hi_.push_back(hi);
  }
  if (tubes.size() <= kMaxMemoTubes) offset_memo_.resize(tubes.size() * (tubes.size() - 1) / 2);
}

bool PlacementModel::collide(std::size_t i, int start_i, std::size_t j, int start_j) const {
  if (i > j) {
    std::swap(i, j);
    std::swap(start_i, start_j);
  }
  const int dur_i = duration(i);
  const int dur_j = duration(j);
  const int offset = start_j - start_i;
  if (offset >= dur_i || -offset >= dur_j) return false;
  if (y_hi_[i] <= y_lo_[j] || y_hi_[j] <= y_lo_[i]) return false;

  std::vector<std::uint8_t>* memo = nullptr;
  if (!offset_memo_.empty()) {
    memo = &offset_memo_[pair_slot(i, j, size())];
    if (memo->empty()) {
      const auto need = static_cast<std::size_t>(dur_i + dur_j - 1);
      if (memo_bytes_ + need <= kMaxMemoBytes) {
        memo->assign(need, 0);
        memo_bytes_ += need;
      } else {
        memo = nullptr;
      }
    }
  }
  const auto slot = static_cast<std::size_t>(offset + dur_j - 1);
  if (memo != nullptr && (*memo)[slot] != 0) return (*memo)[slot] == 2;

  const bool hit = tubes_collide(tubes_[i], start_i, tubes_[j], start_j, constraints_.a_thresh(),
                                 geom_)
                       .has_value();
  if (memo != nullptr) (*memo)[slot] = hit ? 2 : 1;
  return hit;
}

std::vector<int> PlacementModel::starts_of(const SynopsisState& state) const {
  std::vector<int> starts;
  starts.reserve(size());
  for (const Tube& tube : tubes_) {
    const auto it = state.placements.find(tube.id);
    if (it == state.placements.end()) {
      throw ValidationError("tube '" + tube.id + "' has no placement");
    }
    starts.push_back(it->second);
  }
  return starts;
}

SynopsisState PlacementModel::state_of(std::span<const int> starts) const {
  SynopsisState state;
  for (std::size_t i = 0; i < size(); ++i) state.placements[tubes_[i].id] = starts[i];
  return state;
}

std::pair<int, int> PlacementModel::window(std::size_t i, std::span<const int> starts) const {
  int first = 1;
  int last = max_start(i);
  if (constraints_.preserve_order()) {
    const std::size_t r = rank_of_[i];
    if (r > 0) first = std::max(first, starts[ranked_[r - 1]]);
    if (r + 1 < ranked_.size()) last = std::min(last, starts[ranked_[r + 1]]);
  }
  return {first, last};
}

IncrementalState::IncrementalState(const PlacementModel& model, std::vector<int> starts)
    : model_(&model), starts_(std::move(starts)) {
  const std::size_t n = model.size();
  pair_.assign(n * n, 0);
  trial_row_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    t_last_ = std::max(t_last_, starts_[i] + model.duration(i) - 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (model.collide(i, starts_[i], j, starts_[j])) {
        pair_[i * n + j] = pair_[j * n + i] = 1;
        ++ec_;
      }
    }
  }
}

CostBreakdown IncrementalState::trial(std::size_t k, int new_start) {
  const std::size_t n = model_->size();
  int removed = 0;
  int added = 0;
  int t_last = new_start + model_->duration(k) - 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) {
      trial_row_[j] = 0;
      continue;
    }
    removed += pair_[k * n + j];
    trial_row_[j] = model_->collide(k, new_start, j, starts_[j]) ? 1 : 0;
    added += trial_row_[j];
    t_last = std::max(t_last, starts_[j] + model_->duration(j) - 1);
  }
  trial_tube_ = k;
  trial_start_ = new_start;
  trial_ec_ = ec_ - removed + added;
  trial_t_last_ = t_last;
  return model_->cost(trial_ec_, trial_t_last_);
}

void IncrementalState::commit() {
  const std::size_t n = model_->size();
  const std::size_t k = trial_tube_;
  for (std::size_t j = 0; j < n; ++j) {
    pair_[k * n + j] = pair_[j * n + k] = trial_row_[j];
  }
  starts_[k] = trial_start_;
  ec_ = trial_ec_;
  t_last_ = trial_t_last_;
}

Move propose_index_move(const PlacementModel& model, std::span<const int> starts, Rng& rng,
                        MoveKernel kernel) {
  Move move;
  move.tube = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(model.size()) - 1));
  const int current = starts[move.tube];
  auto [first, last] = model.window(move.tube, starts);
  if (kernel == MoveKernel::kUniformWithDrop && rng.uniform01() < 0.5) last = current;
  move.start = static_cast<int>(rng.uniform_int(first, last));
  if (move.start == current) move.start = static_cast<int>(rng.uniform_int(first, last));
  return move;
}

}  // namespace tubepack::detail
