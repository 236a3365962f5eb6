// Copyright 2026 The StepDIRECT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "stepdirect/bounds.hpp"
#include "stepdirect/hyperrect.hpp"
#include "stepdirect/partition.hpp"

namespace stepdirect {
namespace {

TEST(Bounds, ToUnitCubeMidpoint) {
  const Bounds b{{0.0}, {10.0}};
  const std::vector<double> x{5.0};
  EXPECT_DOUBLE_EQ(to_unit_cube(x, b)[0], 0.5);
}

TEST(Bounds, LowerCornerMapsToZero) {
  const Bounds b{{-3.0, 2.0, 1e6}, {4.0, 2.5, 2e6}};
  for (double u : to_unit_cube(b.lower, b)) EXPECT_EQ(u, 0.0);
  for (double u : to_unit_cube(b.upper, b)) EXPECT_EQ(u, 1.0);
}

TEST(Bounds, RoundTrip) {
  const Bounds b{{-3.0, 2.0, 1e6}, {4.0, 2.5, 2e6}};
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    std::vector<double> x(3);
    for (std::size_t i = 0; i < 3; ++i) {
      x[i] = std::uniform_real_distribution<double>(b.lower[i], b.upper[i])(rng);
    }
    const auto back = from_unit_cube(to_unit_cube(x, b), b);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(back[i], x[i], 1e-12 * std::max(1.0, std::fabs(x[i])));
    }
  }
}

TEST(Bounds, OutOfBoundsNamesDimension) {
  const Bounds b{{0.0, 0.0}, {1.0, 1.0}};
  const std::vector<double> x{0.5, 1.5};
  try {
    to_unit_cube(x, b);
    FAIL() << "expected domain_error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(Bounds, ValidateRejectsDegenerateBox) {
  EXPECT_THROW((Bounds{{0.0}, {0.0}}.validate()), std::invalid_argument);
  EXPECT_THROW((Bounds{{0.0}, {INFINITY}}.validate()), std::invalid_argument);
  EXPECT_THROW((Bounds{{0.0, 0.0}, {1.0}}.validate()), std::invalid_argument);
  EXPECT_THROW((Bounds{{}, {}}.validate()), std::invalid_argument);
  EXPECT_NO_THROW(Bounds::unit(3).validate());
}

TEST(HalfDiagonal, Examples) {
  EXPECT_DOUBLE_EQ(half_diagonal(std::vector<int>{0}), 0.5);
  EXPECT_NEAR(half_diagonal(std::vector<int>{1, 0}), 0.5 * std::sqrt(10.0) / 3.0, 1e-15);
  EXPECT_NEAR(half_diagonal(std::vector<int>{1, 0}), 0.527046, 1e-6);
  EXPECT_NEAR(half_diagonal(std::vector<int>{2, 1, 1}), 0.242161, 1e-6);
  EXPECT_NEAR(half_diagonal(std::vector<int>{2, 1, 1}), oracle::closed_form_half_diagonal(3, 4),
              1e-15);
}

TEST(HalfDiagonal, MonotoneAlongTrisections) {
  std::mt19937_64 rng(3);
  HyperRect r = HyperRect::unit_cube(4);
  double last = half_diagonal(r);
  for (int step = 0; step < 40; ++step) {
    const std::size_t dim = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    r = trisect(r, dim, 0)[std::uniform_int_distribution<int>(0, 2)(rng)];
    const double d = half_diagonal(r);
    EXPECT_LE(d, last);
    EXPECT_GT(d, 0.0);
    last = d;
  }
}

TEST(Trisect, UnitSquareCentres) {
  const auto kids = trisect(HyperRect::unit_cube(2), 0, 1);
  EXPECT_DOUBLE_EQ(kids[0].center[0], 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(kids[1].center[0], 0.5);
  EXPECT_DOUBLE_EQ(kids[2].center[0], 5.0 / 6.0);
  for (const auto& k : kids) {
    EXPECT_DOUBLE_EQ(k.center[1], 0.5);
    EXPECT_EQ(k.levels[0], 1);
    EXPECT_EQ(k.levels[1], 0);
  }
  EXPECT_EQ(kids[0].id, 1);
  EXPECT_EQ(kids[2].id, 3);
}

TEST(Trisect, RedistributesSamples) {
  HyperRect r = HyperRect::unit_cube(2);
  r.add_sample(Sample{{0.1, 0.5}, 3.0});
  r.add_sample(Sample{{0.9, 0.5}, 1.0});
  const auto kids = trisect(r, 0, 1);
  ASSERT_EQ(kids[0].samples.size(), 1u);
  EXPECT_EQ(kids[0].samples[0].x[0], 0.1);
  EXPECT_EQ(kids[1].samples.size(), 0u);
  ASSERT_EQ(kids[2].samples.size(), 1u);
  EXPECT_EQ(kids[2].samples[0].x[0], 0.9);
  EXPECT_EQ(kids[0].f_best, 3.0);
  EXPECT_EQ(kids[2].f_best, 1.0);
}

TEST(Trisect, ChildVolumesSumToParent) {
  HyperRect r = HyperRect::unit_cube(3);
  r = trisect(r, 1, 0)[2];
  const auto kids = trisect(r, 1, 0);
  for (const auto& k : kids) EXPECT_EQ(k.volume() * 3.0, r.volume());
  EXPECT_EQ(kids[0].volume() + kids[1].volume() + kids[2].volume(), r.volume());
}

TEST(Trisect, CentresReconstructibleFromIndices) {
  std::mt19937_64 rng(11);
  HyperRect r = HyperRect::unit_cube(2);
  for (int step = 0; step < 30; ++step) {
    r = trisect(r, step % 2, 0)[std::uniform_int_distribution<int>(0, 2)(rng)];
    for (std::size_t i = 0; i < 2; ++i) {
      // centre = (2 * index + 1) / (2 * 3^k): an odd multiple of half a side.
      const double half_side = 0.5 / static_cast<double>(pow3(r.levels[i]));
      const double ratio = r.center[i] / half_side;
      EXPECT_NEAR(ratio, static_cast<double>(2 * r.index[i] + 1), 1e-12 * ratio);
      EXPECT_GE(r.center[i] - half_side, -1e-12);
      EXPECT_LE(r.center[i] + half_side, 1.0 + 1e-12);
    }
  }
}

TEST(CellMembership, HalfOpenWithClosedUpperFace) {
  EXPECT_TRUE(cell_contains(0, 1, 0.0));
  EXPECT_FALSE(cell_contains(0, 1, 1.0 / 3.0));
  EXPECT_TRUE(cell_contains(1, 1, 1.0 / 3.0));
  EXPECT_TRUE(cell_contains(2, 1, 1.0));
  EXPECT_FALSE(cell_contains(2, 1, 1.0 + 1e-15));
}

TEST(HyperRect, TerminalAtMaxLevel) {
  HyperRect r = HyperRect::unit_cube(1);
  for (int k = 0; k < kMaxLevel; ++k) r = trisect(r, 0, 0)[1];
  EXPECT_TRUE(r.terminal());
  EXPECT_FALSE(r.splittable(0));
  EXPECT_GT(half_diagonal(r), 0.0);
}

double Sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += (v - 0.5) * (v - 0.5);
  return std::floor(25.0 * s) / 25.0;
}

TEST(InitPartition, TwoDimensionsGivesFiveRectangles) {
  PartitionState state(2);
  init_partition(state, Sphere);
  EXPECT_EQ(state.partition().size(), 5u);
  EXPECT_EQ(state.evaluations(), 5u);
  EXPECT_EQ(state.f_min(), 0.0);
  EXPECT_EQ(state.x_min(), (std::vector<double>{0.5, 0.5}));
}

TEST(InitPartition, EqualScoresSplitLowerDimensionFirst) {
  // s_0 = s_1 = floor(25/9)/25, so dimension 0 is cut first: the two
  // dimension-0 side pieces keep full height, the dimension-1 ones do not.
  PartitionState state(2);
  init_partition(state, Sphere);
  const Partition& part = state.partition();
  int full_height = 0;
  for (int id : part.leaves()) {
    const HyperRect& r = part.rect(id);
    if (r.center[1] == 0.5 && r.center[0] != 0.5) {
      EXPECT_EQ(r.levels, (std::vector<int>{1, 0}));
      ++full_height;
    }
    if (r.center[0] == 0.5 && r.center[1] != 0.5) EXPECT_EQ(r.levels, (std::vector<int>{1, 1}));
  }
  EXPECT_EQ(full_height, 2);
}

TEST(InitPartition, SmallerScoreSplitFirst) {
  // Dimension 1 has the smaller s_i, so it is cut first.
  auto f = [](std::span<const double> x) { return std::fabs(x[0] - 0.5) + 2.0 * (x[1] - 0.2); };
  PartitionState state(2);
  init_partition(state, f);
  for (int id : state.partition().leaves()) {
    const HyperRect& r = state.partition().rect(id);
    if (r.center[0] == 0.5 && r.center[1] != 0.5) EXPECT_EQ(r.levels, (std::vector<int>{0, 1}));
  }
}

TEST(InitPartition, OneDimension) {
  PartitionState state(1);
  init_partition(state, [](std::span<const double> x) { return x[0]; });
  std::multiset<double> centres;
  for (int id : state.partition().leaves()) centres.insert(state.partition().rect(id).center[0]);
  EXPECT_EQ(centres, (std::multiset<double>{1.0 / 6.0, 0.5, 5.0 / 6.0}));
}

TEST(InitPartition, EveryEvaluatedPointIsACentre) {
  PartitionState state(4);
  init_partition(state, [](std::span<const double> x) { return x[0] - x[1] + 2 * x[2] * x[3]; });
  EXPECT_EQ(state.partition().size(), 9u);
  for (int id : state.partition().leaves()) {
    const HyperRect& r = state.partition().rect(id);
    ASSERT_EQ(r.samples.size(), 1u);
    EXPECT_EQ(r.samples[0].x, r.center);
    ASSERT_TRUE(r.f_center.has_value());
  }
}

TEST(Partition, CoveringAfterRandomDivisions) {
  std::mt19937_64 rng(5);
  Partition part(3);
  for (int step = 0; step < 400; ++step) {
    const auto leaves = part.leaves();
    const int id = leaves[std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng)];
    part.trisect(id, std::uniform_int_distribution<std::size_t>(0, 2)(rng));
  }
  EXPECT_NEAR(part.volume_sum(), 1.0, 1e-12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 0; n < 1000; ++n) {
    std::vector<double> x{unit(rng), unit(rng), unit(rng)};
    int owners = 0;
    int owner = -1;
    for (int id : part.leaves()) {
      if (part.rect(id).contains(x)) {
        ++owners;
        owner = id;
      }
    }
    ASSERT_EQ(owners, 1);
    EXPECT_EQ(part.locate(x), owner);
  }
}

TEST(Partition, SharedFaceBelongsToOneLeaf) {
  Partition part(2);
  part.trisect(0, 0);
  const std::vector<double> x{1.0 / 3.0, 0.5};
  int owners = 0;
  for (int id : part.leaves()) owners += part.rect(id).contains(x);
  EXPECT_EQ(owners, 1);
  const std::vector<double> corner{1.0, 1.0};
  owners = 0;
  for (int id : part.leaves()) owners += part.rect(id).contains(corner);
  EXPECT_EQ(owners, 1);
}

TEST(Partition, CentersWithinMatchesScan) {
  std::mt19937_64 rng(9);
  Partition part(2);
  for (int step = 0; step < 200; ++step) {
    const auto leaves = part.leaves();
    part.trisect(leaves[std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng)],
                 std::uniform_int_distribution<std::size_t>(0, 1)(rng));
  }
  // Equal cells often sit exactly 2d apart, so compare away from the boundary.
  for (int id : part.leaves()) {
    const HyperRect& r = part.rect(id);
    const double radius = 2.0 * half_diagonal(r);
    const auto got = part.centers_within(r.center, radius);
    const std::set<int> got_set(got.begin(), got.end());
    EXPECT_TRUE(got_set.count(id));
    for (int other : part.leaves()) {
      const auto& c = part.rect(other).center;
      const double dist = std::hypot(c[0] - r.center[0], c[1] - r.center[1]);
      if (dist < radius * (1 - 1e-12)) EXPECT_TRUE(got_set.count(other));
      if (dist > radius * (1 + 1e-12)) EXPECT_FALSE(got_set.count(other));
    }
  }
}

TEST(Partition, UnknownIdThrows) {
  Partition part(2);
  EXPECT_THROW(part.rect(42), std::out_of_range);
}

TEST(PartitionState, RecordSampleUpdatesIncumbent) {
  PartitionState state(2);
  state.record_sample({0.2, 0.2}, 5.0);
  state.record_sample({0.7, 0.1}, 3.0);
  EXPECT_EQ(state.f_min(), 3.0);
  EXPECT_EQ(state.x_min(), (std::vector<double>{0.7, 0.1}));
  state.record_sample({0.9, 0.9}, 4.0);
  EXPECT_EQ(state.f_min(), 3.0);
  EXPECT_EQ(state.x_min(), (std::vector<double>{0.7, 0.1}));
  EXPECT_EQ(state.evaluations(), 3u);
  ASSERT_EQ(state.trace().size(), 3u);
  EXPECT_EQ(state.trace()[2].m, 3u);
  EXPECT_EQ(state.trace()[2].f_min, 3.0);
  EXPECT_EQ(state.best_within(1).f_min, 5.0);
  EXPECT_EQ(state.best_within(3).f_min, 3.0);
}

TEST(PartitionState, SamplesFollowTrisection) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PartitionState state(2);
  std::vector<Sample> all;
  for (int n = 0; n < 60; ++n) {
    std::vector<double> x{unit(rng), unit(rng)};
    const double v = std::floor(unit(rng) * 8.0);
    state.record_sample(x, v);
    all.push_back(Sample{x, v});
  }
  Partition& part = state.partition();
  part.trisect(0, 0);
  part.trisect(part.leaves()[1], 1);
  for (int id : part.leaves()) {
    const HyperRect& r = part.rect(id);
    double best = INFINITY;
    std::size_t count = 0;
    for (const auto& s : all) {
      if (r.contains(s.x)) {
        best = std::min(best, s.value);
        ++count;
      }
    }
    EXPECT_EQ(r.samples.size(), count);
    EXPECT_EQ(r.f_best, best);
  }
}

TEST(Median, Conventions) {
  EXPECT_EQ(median(std::vector<double>{1.0}), 1.0);
  EXPECT_EQ(median(std::vector<double>{4.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median(std::vector<double>{10.0, 1.0, 3.0, 2.0}), 2.5);
}

}  // namespace
}  // namespace stepdirect
