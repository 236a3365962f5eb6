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

#include "stepdirect/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stepdirect {

void SelectionParams::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("selection: epsilon must be finite and >= 0");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("selection: lambda must be finite and > 0");
  }
  if (!(epsilon_sigma > 0.0 && epsilon_sigma < 1.0)) {
    throw std::invalid_argument("selection: epsilon_sigma must lie in (0, 1)");
  }
}

std::vector<int> neighborhood(const Partition& partition, int j, double lambda) {
  const HyperRect& r = partition.rect(j);
  if (!partition.is_leaf(j)) {
    throw std::out_of_range("neighborhood: rectangle " + std::to_string(j) + " is not live");
  }
  const double radius = lambda * half_diagonal(r) * (1.0 + kNeighborhoodSlack);
  return partition.centers_within(r.center, radius);
}

double variability(const Partition& partition, int j, const SelectionParams& params) {
  const std::vector<int> n = neighborhood(partition, j, params.lambda);
  const double fj = partition.rect(j).f_best;
  std::size_t differing = 0;
  for (int i : n) {
    if (partition.rect(i).f_best != fj) ++differing;
  }
  const double ratio = static_cast<double>(differing) / static_cast<double>(n.size());
  return std::max(ratio, params.epsilon_sigma);
}

std::vector<RectScore> score_rectangles(const Partition& partition,
                                        const SelectionParams& params) {
  std::vector<RectScore> scores;
  scores.reserve(partition.size());
  for (int id : partition.leaves()) {
    const HyperRect& r = partition.rect(id);
    scores.push_back(RectScore{id, half_diagonal(r), variability(partition, id, params), r.f_best});
  }
  return scores;
}

void refresh_variability(Partition& partition, const SelectionParams& params,
                         std::span<const std::vector<double>> changed) {
  std::vector<int> stale;
  for (int id : partition.leaves()) {
    if (!partition.rect(id).sigma_cache) stale.push_back(id);
  }
  const double scale = params.lambda * (1.0 + kNeighborhoodSlack);
  for (const auto& q : changed) {
    for (int id : partition.leaves_reaching(q, scale)) stale.push_back(id);
  }
  std::sort(stale.begin(), stale.end());
  stale.erase(std::unique(stale.begin(), stale.end()), stale.end());
  for (int id : stale) partition.set_sigma(id, variability(partition, id, params));
}

std::vector<RectScore> cached_scores(const Partition& partition) {
  std::vector<RectScore> scores;
  scores.reserve(partition.size());
  for (int id : partition.leaves()) {
    const HyperRect& r = partition.rect(id);
    if (!r.sigma_cache) {
      throw std::logic_error("cached_scores: rectangle " + std::to_string(id) +
                             " has no variability");
    }
    scores.push_back(RectScore{id, half_diagonal(r), *r.sigma_cache, r.f_best});
  }
  return scores;
}

namespace {

struct Point {
  int id;
  double size;  // d * sigma, or d for classic DIRECT
  double f;
};

bool PassesSlopeTest(std::span<const Point> pts, std::size_t j, double epsilon, double f_min,
                double scale) {
  const double dj = pts[j].size;
  const double fj = pts[j].f;
  double max_lower = -std::numeric_limits<double>::infinity();
  double min_bigger = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i == j) continue;
    if (pts[i].size == dj) {
      if (pts[i].f < fj) return false;  // (a)
      continue;
    }
    const double g = (pts[i].f - fj) / (pts[i].size - dj);
    if (pts[i].size < dj) {
      max_lower = std::max(max_lower, g);
    } else {
      min_bigger = std::min(min_bigger, g);
    }
  }
  if (max_lower > min_bigger) return false;  // (b)
  if (!(min_bigger > 0.0)) return false;     // no K > 0 fits
  if (scale > 0.0) {                         // (c)
    return epsilon <= (f_min - fj) / scale + dj * min_bigger / scale;
  }
  return fj <= dj * min_bigger + f_min;
}

// Only rectangles whose best value is minimal within their size class and
// strictly below every larger class can pass (a) together with K > 0; the
// closed-form test runs on those alone.
std::vector<int> SelectFromPoints(std::vector<Point> pts, double epsilon, double f_min,
                                  double scale) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.id < b.id;
  });
  std::vector<int> selected;
  double best_larger = std::numeric_limits<double>::infinity();
  std::size_t begin = 0;
  while (begin < pts.size()) {
    std::size_t end = begin;
    double group_min = std::numeric_limits<double>::infinity();
    while (end < pts.size() && pts[end].size == pts[begin].size) {
      group_min = std::min(group_min, pts[end].f);
      ++end;
    }
    if (group_min < best_larger) {
      for (std::size_t j = begin; j < end; ++j) {
        if (pts[j].f == group_min && PassesSlopeTest(pts, j, epsilon, f_min, scale)) {
          selected.push_back(pts[j].id);
        }
      }
    }
    best_larger = std::min(best_larger, group_min);
    begin = end;
  }
  return selected;
}

std::vector<Point> StepPoints(std::span<const RectScore> scores) {
  std::vector<Point> pts;
  pts.reserve(scores.size());
  for (const RectScore& s : scores) pts.push_back(Point{s.id, s.product(), s.f_best});
  return pts;
}

}  // namespace

bool is_potentially_optimal(std::span<const RectScore> scores, std::size_t j, double epsilon,
                            double f_min, double scale) {
  const std::vector<Point> pts = StepPoints(scores);
  return PassesSlopeTest(pts, j, epsilon, f_min, scale);
}

std::vector<int> select_step_direct(std::span<const RectScore> scores, double epsilon,
                                    double f_min, double f_median) {
  return SelectFromPoints(StepPoints(scores), epsilon, f_min, std::abs(f_min - f_median));
}

std::vector<int> select_step_direct(const PartitionState& state, const SelectionParams& params) {
  const auto scores = score_rectangles(state.partition(), params);
  return select_step_direct(scores, params.epsilon, state.f_min(), state.f_median());
}

std::vector<int> select_classic_direct(std::span<const RectScore> scores, double epsilon,
                                       double f_min) {
  std::vector<Point> pts;
  pts.reserve(scores.size());
  for (const RectScore& s : scores) pts.push_back(Point{s.id, s.d, s.f_best});
  return SelectFromPoints(std::move(pts), epsilon, f_min, std::abs(f_min));
}

std::vector<int> select_classic_direct(const PartitionState& state, double epsilon) {
  const Partition& part = state.partition();
  std::vector<RectScore> scores;
  scores.reserve(part.size());
  double f_min = std::numeric_limits<double>::infinity();
  for (int id : part.leaves()) {
    const HyperRect& r = part.rect(id);
    const double fc = r.f_center.value_or(r.f_best);
    f_min = std::min(f_min, fc);
    scores.push_back(RectScore{id, half_diagonal(r), 1.0, fc});
  }
  return select_classic_direct(scores, epsilon, f_min);
}

}  // namespace stepdirect
