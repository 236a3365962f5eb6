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
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "stepdirect/bounds.hpp"
#include "stepdirect/hyperrect.hpp"

namespace stepdirect {

enum class DirectionStrategy {
  kCoordinate,  // +/- e_i, axis drawn with probability w_i
  kUnitSphere,  // normalised Gaussian draws
};

struct LocalSearchParams {
  double tau = 1.5;
  double delta0 = 1.0;
  double delta_min = 0.001;
  double delta_max = 2.5;
  std::size_t t_max = 3;
  std::size_t dir_count = 5;
  DirectionStrategy strategy = DirectionStrategy::kCoordinate;

  // Defaults with t_max = ceil(1.5 p).
  static LocalSearchParams defaults_for(std::size_t p);

  // Throws std::invalid_argument unless tau > 1,
  // 0 < delta_min <= delta0 <= delta_max, t_max > 0 and dir_count >= 1.
  void validate() const;
};

using Rng = std::mt19937_64;

// `count` unit directions in R^p. The coordinate strategy needs a probability
// vector w (an empty w means uniform); draws are with replacement.
std::vector<std::vector<double>> gen_directions(DirectionStrategy strategy, std::size_t p,
                                                std::size_t count, std::span<const double> w,
                                                Rng& rng);

struct LocalStep {
  std::vector<double> x;  // position at the top of the iteration
  double delta = 0.0;     // step used to generate the candidates
  double f_current = 0.0;
  double f_star = 0.0;    // +inf when no candidate was feasible
  bool feasible = false;
};

struct LocalSearchResult {
  double f_min = 0.0;
  std::vector<double> x_min;
  std::vector<Sample> trace;  // every evaluation, in call order
  std::vector<LocalStep> steps;
  std::size_t t = 0;          // final budget counter
};

using PointObjective = std::function<double(std::span<const double>)>;

// Randomised directional search confined to `box`, starting at x0. The first
// evaluation is f(x0). Throws std::domain_error when x0 lies outside `box`.
LocalSearchResult local_search(const PointObjective& f, const Bounds& box,
                               std::span<const double> x0, const LocalSearchParams& params,
                               std::span<const double> w, Rng& rng);

}  // namespace stepdirect
