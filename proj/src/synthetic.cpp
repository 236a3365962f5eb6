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

#include "stepdirect/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace stepdirect {

QuantizedSphere::QuantizedSphere(std::size_t p, int levels, std::vector<double> x_star)
    : bounds_(Bounds::unit(p)), levels_(levels), x_star_(std::move(x_star)) {
  if (p == 0) throw std::invalid_argument("quantized_sphere: dimension must be positive");
  if (levels < 2) throw std::invalid_argument("quantized_sphere: levels must be >= 2");
  if (x_star_.size() != p || !bounds_.contains(x_star_)) {
    throw std::invalid_argument("quantized_sphere: x_star must be a point of [0,1]^p");
  }
}

double QuantizedSphere::eval(std::span<const double> x) const {
  if (x.size() != x_star_.size()) {
    throw std::domain_error("quantized_sphere: expected " + std::to_string(x_star_.size()) +
                            " coordinates");
  }
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = x[i] - x_star_[i];
    r2 += t * t;
  }
  return std::floor(levels_ * r2) / levels_;
}

double QuantizedSphere::plateau_radius() const { return std::sqrt(1.0 / levels_); }

QuantizedSphere quantized_sphere(std::size_t p, int levels, std::vector<double> x_star) {
  return QuantizedSphere(p, levels, std::move(x_star));
}

RandomAxisStepwise::RandomAxisStepwise(std::size_t p, std::size_t cuts_per_dim,
                                       std::uint64_t seed)
    : bounds_(Bounds::unit(p)) {
  if (p == 0) throw std::invalid_argument("random_axis_stepwise: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  cuts_.resize(p);
  for (auto& c : cuts_) {
    c.resize(cuts_per_dim);
    for (double& t : c) t = unif(rng);
    std::sort(c.begin(), c.end());
  }
  std::size_t cells = 1;
  for (std::size_t i = 0; i < p; ++i) cells *= cuts_per_dim + 1;
  values_.resize(cells);
  for (double& v : values_) v = unif(rng);

  const auto best = std::min_element(values_.begin(), values_.end());
  optimum_ = *best;
  std::size_t flat = static_cast<std::size_t>(best - values_.begin());
  optimum_point_.resize(p);
  for (std::size_t i = 0; i < p; ++i) {
    const std::size_t k = flat % (cuts_per_dim + 1);
    flat /= cuts_per_dim + 1;
    const double lo = k == 0 ? 0.0 : cuts_[i][k - 1];
    const double hi = k == cuts_per_dim ? 1.0 : cuts_[i][k];
    optimum_point_[i] = lo + (hi - lo) / 2.0;
  }
}

std::size_t RandomAxisStepwise::cell_of(std::span<const double> x) const {
  if (x.size() != cuts_.size()) {
    throw std::domain_error("random_axis_stepwise: expected " + std::to_string(cuts_.size()) +
                            " coordinates");
  }
  std::size_t flat = 0;
  std::size_t stride = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& c = cuts_[i];
    const auto k = static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), x[i]) -
                                            c.begin());
    flat += k * stride;
    stride *= c.size() + 1;
  }
  return flat;
}

double RandomAxisStepwise::eval(std::span<const double> x) const { return values_[cell_of(x)]; }

RandomAxisStepwise random_axis_stepwise(std::size_t p, std::size_t cuts_per_dim,
                                        std::uint64_t seed) {
  return RandomAxisStepwise(p, cuts_per_dim, seed);
}

}  // namespace stepdirect
