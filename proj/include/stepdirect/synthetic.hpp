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
#include <cstdint>
#include <span>
#include <vector>

#include "stepdirect/objective.hpp"

namespace stepdirect {

// f(x) = floor(L * |x - x_star|^2) / L on [0,1]^p. The global minimum 0 is
// attained on the ball of radius sqrt(1/L) around x_star.
class QuantizedSphere final : public StepwiseObjective {
 public:
  QuantizedSphere(std::size_t p, int levels, std::vector<double> x_star);

  const Bounds& bounds() const override { return bounds_; }
  double eval(std::span<const double> x) const override;

  int levels() const { return levels_; }
  const std::vector<double>& x_star() const { return x_star_; }
  double optimum() const { return 0.0; }
  double plateau_radius() const;

 private:
  Bounds bounds_;
  int levels_;
  std::vector<double> x_star_;
};

QuantizedSphere quantized_sphere(std::size_t p, int levels, std::vector<double> x_star);

// Axis-aligned grid of (cuts + 1)^p cells on [0,1]^p with independent uniform
// cell values. The exact global minimum is recorded at construction.
class RandomAxisStepwise final : public StepwiseObjective {
 public:
  RandomAxisStepwise(std::size_t p, std::size_t cuts_per_dim, std::uint64_t seed);

  const Bounds& bounds() const override { return bounds_; }
  double eval(std::span<const double> x) const override;

  const std::vector<std::vector<double>>& cuts() const { return cuts_; }
  const std::vector<double>& cell_values() const { return values_; }
  std::size_t cell_of(std::span<const double> x) const;

  double optimum() const { return optimum_; }
  // Centre of the cell holding the optimum.
  const std::vector<double>& optimum_point() const { return optimum_point_; }

 private:
  Bounds bounds_;
  std::vector<std::vector<double>> cuts_;
  std::vector<double> values_;
  double optimum_;
  std::vector<double> optimum_point_;
};

RandomAxisStepwise random_axis_stepwise(std::size_t p, std::size_t cuts_per_dim,
                                        std::uint64_t seed);

}  // namespace stepdirect
