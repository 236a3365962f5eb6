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

namespace stepdirect {

// Axis-aligned search box [lower, upper] in the objective's raw units.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  static Bounds unit(std::size_t p);

  std::size_t dim() const { return lower.size(); }

  // Throws std::invalid_argument unless both vectors have the same non-zero
  // length, all entries are finite and lower < upper componentwise.
  void validate() const;

  bool contains(std::span<const double> x) const;
};

// Linear map of a raw point onto [0,1]^p. Throws std::domain_error naming the
// first dimension that lies outside the box.
std::vector<double> to_unit_cube(std::span<const double> x, const Bounds& b);

// Inverse of to_unit_cube. Endpoints map exactly onto lower/upper.
std::vector<double> from_unit_cube(std::span<const double> u, const Bounds& b);

}  // namespace stepdirect
