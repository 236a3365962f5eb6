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

#include "stepdirect/objective.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace stepdirect {

namespace {

std::string DescribePoint(const std::vector<double>& x, const std::string& what) {
  std::ostringstream os;
  os.precision(17);
  os << "objective failed at (";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << "): " << what;
  return os.str();
}

}  // namespace

ObjectiveError::ObjectiveError(std::vector<double> point, const std::string& what)
    : std::runtime_error(DescribePoint(point, what)), point_(std::move(point)) {}

void validate_importance(std::span<const double> w, std::size_t p) {
  if (w.size() != p) {
    throw std::invalid_argument("importance: expected " + std::to_string(p) +
                                " weights, got " + std::to_string(w.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0) {
      throw std::invalid_argument("importance: weight " + std::to_string(i) +
                                  " is negative or non-finite");
    }
    sum += w[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("importance: weights sum to " + std::to_string(sum) +
                                ", expected 1");
  }
}

FunctionObjective::FunctionObjective(Bounds bounds, Fn fn, std::vector<double> importance)
    : bounds_(std::move(bounds)), fn_(std::move(fn)), importance_(std::move(importance)) {
  bounds_.validate();
  if (!importance_.empty()) validate_importance(importance_, bounds_.dim());
}

}  // namespace stepdirect
