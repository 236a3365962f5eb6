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

#include <cstddef>
#include <span>
#include <vector>

#include "stepdirect/partition.hpp"

namespace stepdirect {

struct SelectionParams {
  double epsilon = 1e-4;        // balance between local and global search
  double lambda = 2.0;          // neighbourhood radius in half-diagonals
  double epsilon_sigma = 1e-8;  // variability floor

  // Throws std::invalid_argument unless epsilon >= 0, lambda > 0 and
  // 0 < epsilon_sigma < 1.
  void validate() const;
};

// (f_best, d, sigma) triple describing one rectangle during selection.
struct RectScore {
  int id = -1;
  double d = 0.0;
  double sigma = 1.0;
  double f_best = 0.0;

  double product() const { return d * sigma; }
};

// Relative slack on the neighbourhood radius. Centres of equal-sized
// neighbours often sit exactly lambda * d apart, which rounding would
// otherwise decide.
inline constexpr double kNeighborhoodSlack = 1e-12;

// Leaves whose centres lie within lambda * d_j of c_j (j itself included).
std::vector<int> neighborhood(const Partition& partition, int j, double lambda);

// max{|N^D| / |N|, epsilon_sigma}, where N^D holds the neighbours whose best
// value differs (exactly) from that of j.
double variability(const Partition& partition, int j, const SelectionParams& params);

// Scores every leaf with a freshly computed variability.
std::vector<RectScore> score_rectangles(const Partition& partition, const SelectionParams& params);

// Brings the cached variability of every leaf up to date after the leaves
// centred at `changed` were created, removed or received samples. Leaves
// without a cached value are always computed. The result matches a full
// recomputation.
void refresh_variability(Partition& partition, const SelectionParams& params,
                         std::span<const std::vector<double>> changed);

// Scores every leaf from its cached variability.
std::vector<RectScore> cached_scores(const Partition& partition);

// Closed-form potential-optimality test for scores[j]. `scale` is the
// normaliser of the improvement threshold (|f_min - f_median| here, |f_min|
// for classic DIRECT). Implements conditions (a)-(c) and additionally
// requires the feasible slope K to be strictly positive.
bool is_potentially_optimal(std::span<const RectScore> scores, std::size_t j, double epsilon,
                            double f_min, double scale);

// All potentially optimal rectangles, ordered by decreasing d*sigma then id.
std::vector<int> select_step_direct(std::span<const RectScore> scores, double epsilon,
                                    double f_min, double f_median);
std::vector<int> select_step_direct(const PartitionState& state, const SelectionParams& params);

// Original DIRECT rule on (d, f(centre)) with threshold epsilon * |f_min|.
// The sigma field of `scores` is ignored; f_best must hold the centre values.
std::vector<int> select_classic_direct(std::span<const RectScore> scores, double epsilon,
                                       double f_min);
std::vector<int> select_classic_direct(const PartitionState& state, double epsilon);

}  // namespace stepdirect
