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

#include "stepdirect/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stepdirect {

Bounds Bounds::unit(std::size_t p) {
  return Bounds{std::vector<double>(p, 0.0), std::vector<double>(p, 1.0)};
}

void Bounds::validate() const {
  if (lower.empty()) throw std::invalid_argument("bounds: dimension must be positive");
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("bounds: lower has " + std::to_string(lower.size()) +
                                " entries but upper has " + std::to_string(upper.size()));
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i])) {
      throw std::invalid_argument("bounds: non-finite entry in dimension " + std::to_string(i));
    }
    if (!(lower[i] < upper[i])) {
      throw std::invalid_argument("bounds: lower >= upper in dimension " + std::to_string(i));
    }
  }
}

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

std::vector<double> to_unit_cube(std::span<const double> x, const Bounds& b) {
  if (x.size() != b.dim()) {
    throw std::domain_error("to_unit_cube: point has " + std::to_string(x.size()) +
                            " components, bounds have " + std::to_string(b.dim()));
  }
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= b.lower[i] && x[i] <= b.upper[i])) {
      throw std::domain_error("to_unit_cube: coordinate " + std::to_string(i) + " = " +
                              std::to_string(x[i]) + " outside [" + std::to_string(b.lower[i]) +
                              ", " + std::to_string(b.upper[i]) + "]");
    }
    u[i] = std::clamp((x[i] - b.lower[i]) / (b.upper[i] - b.lower[i]), 0.0, 1.0);
  }
  return u;
}

std::vector<double> from_unit_cube(std::span<const double> u, const Bounds& b) {
  if (u.size() != b.dim()) {
    throw std::domain_error("from_unit_cube: point has " + std::to_string(u.size()) +
                            " components, bounds have " + std::to_string(b.dim()));
  }
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    x[i] = std::clamp(std::lerp(b.lower[i], b.upper[i], u[i]), b.lower[i], b.upper[i]);
  }
  return x;
}

}  // namespace stepdirect
