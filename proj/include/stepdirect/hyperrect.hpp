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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace stepdirect {

// Deepest trisection level per dimension. 2 * 3^32 < 2^53, so cell bounds and
// centres computed from integer indices are correctly rounded quotients.
inline constexpr int kMaxLevel = 32;

std::int64_t pow3(int k);

// Geometry of cell `index` (0 <= index < 3^level) along one unit-cube axis.
double cell_lower(std::int64_t index, int level);
double cell_upper(std::int64_t index, int level);
double cell_center(std::int64_t index, int level);

// Half-open membership [lower, upper), closed on the global upper face x = 1.
bool cell_contains(std::int64_t index, int level, double x);

struct Sample {
  std::vector<double> x;  // unit-cube coordinates
  double value = 0.0;
};

// One cell of a trisection partition of [0,1]^p. Side lengths are exactly
// 3^-levels[i]; the cell spans [index[i], index[i]+1) * 3^-levels[i].
struct HyperRect {
  int id = -1;
  std::vector<int> levels;
  std::vector<std::int64_t> index;
  std::vector<double> center;
  std::vector<Sample> samples;
  double f_best = std::numeric_limits<double>::infinity();
  std::size_t best_sample = 0;
  std::optional<double> f_center;
  std::optional<double> sigma_cache;

  static HyperRect unit_cube(std::size_t p, int id = 0);

  std::size_t dim() const { return levels.size(); }
  double side(std::size_t i) const;
  double lower(std::size_t i) const { return cell_lower(index[i], levels[i]); }
  double upper(std::size_t i) const { return cell_upper(index[i], levels[i]); }
  bool contains(std::span<const double> x) const;
  double volume() const;
  int total_level() const;
  bool splittable(std::size_t i) const { return levels[i] < kMaxLevel; }
  bool terminal() const;

  bool has_samples() const { return !samples.empty(); }
  const Sample& best() const { return samples.at(best_sample); }

  // Appends a sample and keeps f_best / best_sample current; the earliest
  // sample wins ties.
  void add_sample(Sample s);
};

// Distance from the centre to any vertex: 0.5 * sqrt(sum_i 3^(-2 k_i)).
double half_diagonal(std::span<const int> levels);
double half_diagonal(const HyperRect& r);

// Splits `r` into thirds along `dim`. Children are returned as (low, middle,
// high) with ids first_id, first_id + 1, first_id + 2; samples move to the
// child that contains them.
std::array<HyperRect, 3> trisect(HyperRect r, std::size_t dim, int first_id);

}  // namespace stepdirect
