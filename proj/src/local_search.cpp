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

#include "stepdirect/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stepdirect {

LocalSearchParams LocalSearchParams::defaults_for(std::size_t p) {
  LocalSearchParams params;
  params.t_max = static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(p)));
  return params;
}

void LocalSearchParams::validate() const {
  if (!(tau > 1.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("local search: tau must be > 1");
  }
  if (!(delta_min > 0.0 && delta_min <= delta0 && delta0 <= delta_max) ||
      !std::isfinite(delta_max)) {
    throw std::invalid_argument("local search: need 0 < delta_min <= delta0 <= delta_max");
  }
  if (t_max == 0) throw std::invalid_argument("local search: t_max must be positive");
  if (dir_count == 0) throw std::invalid_argument("local search: dir_count must be >= 1");
}

std::vector<std::vector<double>> gen_directions(DirectionStrategy strategy, std::size_t p,
                                                std::size_t count, std::span<const double> w,
                                                Rng& rng) {
  std::vector<std::vector<double>> dirs(count, std::vector<double>(p, 0.0));
  if (strategy == DirectionStrategy::kCoordinate) {
    if (!w.empty() && w.size() != p) {
      throw std::invalid_argument("gen_directions: weight vector has length " +
                                  std::to_string(w.size()) + ", expected " + std::to_string(p));
    }
    std::discrete_distribution<std::size_t> axis =
        w.empty() ? std::discrete_distribution<std::size_t>(p, 0.0, 1.0,
                                                            [](double) { return 1.0; })
                  : std::discrete_distribution<std::size_t>(w.begin(), w.end());
    std::bernoulli_distribution sign(0.5);
    for (auto& d : dirs) {
      const std::size_t i = axis(rng);
      d[i] = sign(rng) ? 1.0 : -1.0;
    }
    return dirs;
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& d : dirs) {
    double norm = 0.0;
    while (norm == 0.0 || !std::isfinite(norm)) {
      for (double& v : d) v = normal(rng);
      norm = std::sqrt(std::inner_product(d.begin(), d.end(), d.begin(), 0.0));
    }
    for (double& v : d) v /= norm;
  }
  return dirs;
}

LocalSearchResult local_search(const PointObjective& f, const Bounds& box,
                               std::span<const double> x0, const LocalSearchParams& params,
                               std::span<const double> w, Rng& rng) {
  params.validate();
  const std::size_t p = box.dim();
  if (x0.size() != p) {
    throw std::domain_error("local search: start point has " + std::to_string(x0.size()) +
                            " coordinates, expected " + std::to_string(p));
  }
  if (!box.contains(x0)) throw std::domain_error("local search: start point outside the box");

  LocalSearchResult res;
  res.f_min = std::numeric_limits<double>::infinity();
  std::vector<double> x(x0.begin(), x0.end());
  double delta = params.delta0;

  auto evaluate = [&](const std::vector<double>& y) {
    const double v = f(y);
    res.trace.push_back(Sample{y, v});
    if (v < res.f_min) {
      res.f_min = v;
      res.x_min = y;
    }
    return v;
  };

  std::vector<double> y(p);
  while (res.t < params.t_max) {
    LocalStep step;
    step.x = x;
    step.delta = delta;
    step.f_current = evaluate(x);
    step.f_star = std::numeric_limits<double>::infinity();

    const auto dirs = gen_directions(params.strategy, p, params.dir_count, w, rng);
    std::vector<std::vector<double>> feasible;
    std::vector<double> values;
    for (const auto& d : dirs) {
      for (std::size_t i = 0; i < p; ++i) y[i] = x[i] + delta * d[i];
      if (!box.contains(y)) continue;
      // Directions are drawn with replacement; a repeated candidate reuses its value.
      const auto seen = std::find(feasible.begin(), feasible.end(), y);
      values.push_back(seen == feasible.end() ? evaluate(y)
                                              : values[static_cast<std::size_t>(seen - feasible.begin())]);
      feasible.push_back(y);
    }

    if (feasible.empty()) {
      res.t += 1;
      delta = std::max(delta / params.tau, params.delta_min);
      res.steps.push_back(std::move(step));
      continue;
    }
    res.t += params.dir_count + 1;
    step.feasible = true;
    step.f_star = *std::min_element(values.begin(), values.end());

    std::vector<std::size_t> argmin;
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] == step.f_star) argmin.push_back(k);
    }
    std::uniform_int_distribution<std::size_t> pick(0, argmin.size() - 1);
    const std::size_t chosen = argmin[pick(rng)];

    if (step.f_star > step.f_current) {
      delta = std::min(params.tau * delta, params.delta_max);
    } else if (step.f_star < step.f_current) {
      delta = std::max(delta / params.tau, params.delta_min);
    }
    x = feasible[chosen];
    res.steps.push_back(std::move(step));
  }
  return res;
}

}  // namespace stepdirect
