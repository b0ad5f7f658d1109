#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "tubepack/collision.hpp"
#include "tubepack/errors.hpp"

using namespace tubepack;
using testing::cyclic;
using testing::planar;
using testing::still_tube;

namespace {

std::map<TubeId, int> shifted(const SynopsisState& s, int delta) {
  std::map<TubeId, int> out;
  for (const auto& [id, start] : s.placements) out[id] = start + delta;
  return out;
}

}  // namespace

TEST_CASE("tubes_collide examples") {
  const FrameGeometry g = planar(100, 100, 40);
  const Tube a = still_tube("a", 1, 10, {0, 0, 10, 10});
  const Tube b = still_tube("b", 1, 10, {0, 0, 10, 10});
  CHECK_FALSE(tubes_collide(a, 1, b, 11, 1.0, g).has_value());
  // Area equal to the threshold counts.
  CHECK(tubes_collide(a, 1, b, 1, 100.0, g) == 1);
  CHECK(tubes_collide(a, 1, b, 5, 100.0, g) == 5);

  const Tube c = still_tube("c", 1, 10, {5, 0, 10, 10});
  // Frame 10 is the single shared frame, overlap 50.
  CHECK_FALSE(tubes_collide(a, 1, c, 10, 51.0, g).has_value());
  CHECK(tubes_collide(a, 1, c, 10, 50.0, g) == 10);
  CHECK(tubes_collide(c, 10, a, 1, 50.0, g) == 10);
}

TEST_CASE("zero-area contact never collides") {
  const FrameGeometry g = planar(100, 100, 40);
  const Tube a = still_tube("a", 1, 5, {0, 0, 10, 10});
  const Tube b = still_tube("b", 1, 5, {10, 0, 10, 10});
  CHECK_FALSE(tubes_collide(a, 1, b, 1, 0.0, g).has_value());
}

TEST_CASE("count_collisions counts pairs once") {
  const FrameGeometry g = planar(100, 100, 40);
  const BoundingBox box{10, 10, 10, 10};
  const std::vector<Tube> three{still_tube("A", 1, 5, box), still_tube("B", 1, 5, box),
                                still_tube("C", 1, 5, box)};
  const CollisionCount c = count_collisions(three, original_state(three), 50.0, g);
  CHECK(c.count == 3);
  CHECK(c.count == oracle::naive_collision_count(three, original_state(three).placements, 50.0, g));
  REQUIRE(c.pairs.size() == 3);
  CHECK(c.pairs[0] == CollisionPair{"A", "B", 1, 100.0});
  CHECK(c.pairs[2].id_a == "B");
  CHECK(c.pairs[2].id_b == "C");

  const std::vector<Tube> two{still_tube("x", 1, 10, box), still_tube("y", 1, 10, box)};
  CHECK(count_collisions(two, original_state(two), 1.0, g).count == 1);
}

TEST_CASE("witness is the first offending frame and area is the per-frame maximum") {
  const FrameGeometry g = planar(100, 100, 40);
  Tube mover{"m", 1, {}};
  for (int k = 0; k < 6; ++k) mover.boxes.push_back({12.0 - 2 * k, 0, 10, 10});
  const std::vector<Tube> tubes{still_tube("s", 1, 6, {0, 0, 10, 10}), mover};
  // Overlap widths per frame: 0, 0, 2, 4, 6, 8.
  const CollisionCount c = count_collisions(tubes, original_state(tubes), 50.0, g);
  REQUIRE(c.count == 1);
  CHECK(c.pairs[0].id_a == "m");
  CHECK(c.pairs[0].first_offending_frame == 5);
  CHECK(c.pairs[0].max_overlap_area == 80.0);
}

TEST_CASE("spatially disjoint tubes never collide") {
  const FrameGeometry g = planar(100, 100, 40);
  const std::vector<Tube> tubes{still_tube("a", 1, 20, {0, 0, 10, 10}),
                                still_tube("b", 1, 20, {50, 50, 10, 10}),
                                still_tube("c", 1, 20, {0, 80, 10, 10})};
  std::mt19937_64 gen(5);
  for (int n = 0; n < 20; ++n) {
    SynopsisState s;
    for (const Tube& t : tubes) s.placements[t.id] = std::uniform_int_distribution<int>(1, 21)(gen);
    CHECK(count_collisions(tubes, s, 0.0, g).count == 0);
  }
}

TEST_CASE("temporal index enumerates intersecting closed intervals") {
  CHECK(TemporalIndex({{1, 10}, {20, 30}}).candidate_pairs().empty());
  CHECK(TemporalIndex({{1, 10}, {10, 15}}).candidate_pairs() ==
        std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
  const TemporalIndex idx({{5, 9}, {1, 4}, {3, 6}, {9, 9}});
  CHECK(idx.candidate_pairs() ==
        std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {0, 3}, {1, 2}});
}

TEST_CASE("temporal index matches brute force interval intersection") {
  std::mt19937_64 gen(17);
  for (int n = 0; n < 50; ++n) {
    std::vector<LifeInterval> iv;
    for (int i = 0; i < 40; ++i) {
      const int a = std::uniform_int_distribution<int>(1, 100)(gen);
      iv.push_back({a, a + std::uniform_int_distribution<int>(0, 15)(gen)});
    }
    std::vector<std::pair<std::size_t, std::size_t>> brute;
    for (std::size_t i = 0; i < iv.size(); ++i) {
      for (std::size_t j = i + 1; j < iv.size(); ++j) {
        if (iv[i].first <= iv[j].last && iv[j].first <= iv[i].last) brute.emplace_back(i, j);
      }
    }
    CHECK(TemporalIndex(iv).candidate_pairs() == brute);
  }
}

TEST_CASE("indexed count equals the naive scan on 100 random tubes") {
  std::mt19937_64 gen(23);
  for (const Topology topo : {Topology::kPlanar, Topology::kCyclicX}) {
    const FrameGeometry g{120, 90, 300, topo};
    const auto tubes = testing::random_tubes(gen, g, 100, 60);
    const SynopsisState s = original_state(tubes);
    for (const double thresh : {0.0, 1.0, 40.0}) {
      CHECK(count_collisions(tubes, s, thresh, g).count ==
            oracle::naive_collision_count(tubes, s.placements, thresh, g));
    }
  }
}

TEST_CASE("collision count is invariant under a common time shift") {
  std::mt19937_64 gen(29);
  const FrameGeometry g = planar(60, 60, 200);
  for (int n = 0; n < 20; ++n) {
    const auto tubes = testing::random_tubes(gen, g, 25, 40);
    const SynopsisState s = original_state(tubes);
    const int base = count_collisions(tubes, s, 10.0, g).count;
    CHECK(count_collisions(tubes, SynopsisState{shifted(s, 37)}, 10.0, g).count == base);
  }
}

TEST_CASE("torus shift leaves collision decisions unchanged") {
  std::mt19937_64 gen(31);
  const FrameGeometry g = cyclic(64, 48, 150);
  for (int n = 0; n < 20; ++n) {
    const auto tubes = testing::random_tubes(gen, g, 20, 40);
    const int delta = std::uniform_int_distribution<int>(1, 63)(gen);
    auto moved = tubes;
    for (Tube& t : moved) {
      for (BoundingBox& b : t.boxes) b.x_min = std::fmod(b.x_min + delta, 64.0);
    }
    const SynopsisState s = original_state(tubes);
    const CollisionCount a = count_collisions(tubes, s, 5.0, g);
    const CollisionCount b = count_collisions(moved, s, 5.0, g);
    CHECK(a.count == b.count);
    CHECK(a.pairs == b.pairs);
  }
}

TEST_CASE("missing placement is rejected") {
  const std::vector<Tube> tubes{still_tube("a", 1, 2, {0, 0, 1, 1})};
  CHECK_THROWS_AS(count_collisions(tubes, SynopsisState{}, 1.0, planar(10, 10, 5)),
                  ValidationError);
}
