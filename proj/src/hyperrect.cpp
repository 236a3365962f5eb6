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

#include "stepdirect/hyperrect.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace stepdirect {

namespace {

constexpr std::array<std::int64_t, kMaxLevel + 2> MakePow3Table() {
  std::array<std::int64_t, kMaxLevel + 2> t{};
  t[0] = 1;
  for (std::size_t k = 1; k < t.size(); ++k) t[k] = t[k - 1] * 3;
  return t;
}

constexpr auto kPow3 = MakePow3Table();

void RefreshBest(HyperRect& r) {
  r.f_best = std::numeric_limits<double>::infinity();
  r.best_sample = 0;
  for (std::size_t s = 0; s < r.samples.size(); ++s) {
    if (r.samples[s].value < r.f_best) {
      r.f_best = r.samples[s].value;
      r.best_sample = s;
    }
  }
}

}  // namespace

std::int64_t pow3(int k) {
  if (k < 0 || k >= static_cast<int>(kPow3.size())) {
    throw std::out_of_range("pow3: level " + std::to_string(k) + " out of range");
  }
  return kPow3[static_cast<std::size_t>(k)];
}

double cell_lower(std::int64_t index, int level) {
  return static_cast<double>(index) / static_cast<double>(pow3(level));
}

double cell_upper(std::int64_t index, int level) {
  return static_cast<double>(index + 1) / static_cast<double>(pow3(level));
}

double cell_center(std::int64_t index, int level) {
  return static_cast<double>(2 * index + 1) / static_cast<double>(2 * pow3(level));
}

bool cell_contains(std::int64_t index, int level, double x) {
  if (x < cell_lower(index, level)) return false;
  if (x < cell_upper(index, level)) return true;
  return index + 1 == pow3(level) && x <= 1.0;
}

HyperRect HyperRect::unit_cube(std::size_t p, int id) {
  if (p == 0) throw std::invalid_argument("unit_cube: dimension must be positive");
  HyperRect r;
  r.id = id;
  r.levels.assign(p, 0);
  r.index.assign(p, 0);
  r.center.assign(p, 0.5);
  return r;
}

double HyperRect::side(std::size_t i) const {
  return 1.0 / static_cast<double>(pow3(levels[i]));
}

bool HyperRect::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!cell_contains(index[i], levels[i], x[i])) return false;
  }
  return true;
}

double HyperRect::volume() const { return std::pow(3.0, -total_level()); }

int HyperRect::total_level() const {
  int r = 0;
  for (int k : levels) r += k;
  return r;
}

bool HyperRect::terminal() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (splittable(i)) return false;
  }
  return true;
}

void HyperRect::add_sample(Sample s) {
  if (samples.empty() || s.value < f_best) {
    f_best = s.value;
    best_sample = samples.size();
  }
  samples.push_back(std::move(s));
}

double half_diagonal(std::span<const int> levels) {
  long double sum = 0.0L;
  for (int k : levels) {
    const long double side = 1.0L / static_cast<long double>(pow3(k));
    sum += side * side;
  }
  return static_cast<double>(0.5L * std::sqrt(sum));
}

double half_diagonal(const HyperRect& r) { return half_diagonal(r.levels); }

std::array<HyperRect, 3> trisect(HyperRect r, std::size_t dim, int first_id) {
  if (dim >= r.dim()) {
    throw std::out_of_range("trisect: dimension " + std::to_string(dim) + " >= " +
                            std::to_string(r.dim()));
  }
  if (!r.splittable(dim)) {
    throw std::domain_error("trisect: dimension " + std::to_string(dim) +
                            " already at the maximum level");
  }
  std::array<HyperRect, 3> kids;
  const int level = r.levels[dim] + 1;
  for (int c = 0; c < 3; ++c) {
    HyperRect& k = kids[static_cast<std::size_t>(c)];
    k.id = first_id + c;
    k.levels = r.levels;
    k.index = r.index;
    k.center = r.center;
    k.levels[dim] = level;
    k.index[dim] = 3 * r.index[dim] + c;
    k.center[dim] = cell_center(k.index[dim], level);
  }
  kids[1].f_center = r.f_center;
  for (Sample& s : r.samples) {
    for (HyperRect& k : kids) {
      if (cell_contains(k.index[dim], level, s.x[dim])) {
        if (s.x == k.center) k.f_center = s.value;
        k.samples.push_back(std::move(s));
        break;
      }
    }
  }
  for (HyperRect& k : kids) RefreshBest(k);
  return kids;
}

}  // namespace stepdirect
