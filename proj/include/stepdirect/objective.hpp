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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stepdirect/bounds.hpp"

namespace stepdirect {

// Black-box objective over a bounded box. eval() takes raw-unit points and
// must be pure and safe to call concurrently.
class StepwiseObjective {
 public:
  virtual ~StepwiseObjective() = default;

  virtual const Bounds& bounds() const = 0;
  virtual double eval(std::span<const double> x) const = 0;

  // Normalised variable importance (non-negative, sums to one), or empty.
  virtual std::span<const double> importance() const { return {}; }

  std::size_t dim() const { return bounds().dim(); }
};

// Raised when an objective call fails or returns a non-finite value; carries
// the offending raw point.
class ObjectiveError : public std::runtime_error {
 public:
  ObjectiveError(std::vector<double> point, const std::string& what);
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

// Throws std::invalid_argument unless w has length p, is non-negative and sums
// to one within 1e-9.
void validate_importance(std::span<const double> w, std::size_t p);

// Adapts any callable to the objective interface.
class FunctionObjective final : public StepwiseObjective {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  FunctionObjective(Bounds bounds, Fn fn, std::vector<double> importance = {});

  const Bounds& bounds() const override { return bounds_; }
  double eval(std::span<const double> x) const override { return fn_(x); }
  std::span<const double> importance() const override { return importance_; }

 private:
  Bounds bounds_;
  Fn fn_;
  std::vector<double> importance_;
};

}  // namespace stepdirect
