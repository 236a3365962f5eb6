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

#include "stepdirect/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace stepdirect {

Partition::Partition(std::size_t p) : p_(p) {
  nodes_.push_back(Node{HyperRect::unit_cube(p, 0)});
  nodes_.back().reach = half_diagonal(nodes_.back().rect);
  leaves_.push_back(0);
  leaf_slot_.push_back(0);
}

Partition::Node& Partition::node(int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
    throw std::out_of_range("partition: unknown rectangle id " + std::to_string(id));
  }
  return nodes_[static_cast<std::size_t>(id)];
}

const Partition::Node& Partition::node(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
    throw std::out_of_range("partition: unknown rectangle id " + std::to_string(id));
  }
  return nodes_[static_cast<std::size_t>(id)];
}

const HyperRect& Partition::rect(int id) const { return node(id).rect; }

bool Partition::is_leaf(int id) const { return node(id).split_dim < 0; }

int Partition::locate(std::span<const double> x) const {
  if (x.size() != p_) {
    throw std::domain_error("locate: point has " + std::to_string(x.size()) +
                            " components, partition has " + std::to_string(p_));
  }
  for (std::size_t i = 0; i < p_; ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      throw std::domain_error("locate: coordinate " + std::to_string(i) +
                              " outside the unit cube");
    }
  }
  int id = 0;
  while (true) {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.split_dim < 0) return id;
    const auto d = static_cast<std::size_t>(n.split_dim);
    const int level = n.rect.levels[d] + 1;
    int next = n.children[2];
    for (int c = 0; c < 2; ++c) {
      if (cell_contains(3 * n.rect.index[d] + c, level, x[d])) {
        next = n.children[static_cast<std::size_t>(c)];
        break;
      }
    }
    id = next;
  }
}

void Partition::add_sample(int leaf, Sample s) {
  Node& n = node(leaf);
  if (n.split_dim >= 0) {
    throw std::logic_error("add_sample: rectangle " + std::to_string(leaf) + " is not a leaf");
  }
  if (s.x == n.rect.center) n.rect.f_center = s.value;
  n.rect.add_sample(std::move(s));
}

std::array<int, 3> Partition::trisect(int id, std::size_t dim) {
  if (!is_leaf(id)) {
    throw std::logic_error("trisect: rectangle " + std::to_string(id) + " is not a leaf");
  }
  const int first = static_cast<int>(nodes_.size());
  Node& n = node(id);
  // The interior node keeps its geometry for locate/centers_within.
  HyperRect geometry;
  geometry.id = n.rect.id;
  geometry.levels = n.rect.levels;
  geometry.index = n.rect.index;
  geometry.center = n.rect.center;
  geometry.f_center = n.rect.f_center;
  geometry.f_best = n.rect.f_best;
  auto kids = stepdirect::trisect(std::move(n.rect), dim, first);
  n.rect = std::move(geometry);
  n.split_dim = static_cast<int>(dim);
  n.children = {first, first + 1, first + 2};

  const int slot = leaf_slot_[static_cast<std::size_t>(id)];
  leaves_[static_cast<std::size_t>(slot)] = first + 1;
  leaf_slot_[static_cast<std::size_t>(id)] = -1;
  for (int c = 0; c < 3; ++c) {
    nodes_.push_back(Node{std::move(kids[static_cast<std::size_t>(c)])});
    nodes_.back().parent = id;
    nodes_.back().reach = half_diagonal(nodes_.back().rect);
    leaf_slot_.push_back(-1);
  }
  for (int up = id; up >= 0; up = nodes_[static_cast<std::size_t>(up)].parent) {
    Node& u = nodes_[static_cast<std::size_t>(up)];
    double reach = 0.0;
    for (int child : u.children) reach = std::max(reach, nodes_[static_cast<std::size_t>(child)].reach);
    if (reach == u.reach && up != id) break;
    u.reach = reach;
  }
  leaf_slot_[static_cast<std::size_t>(first + 1)] = slot;
  leaf_slot_[static_cast<std::size_t>(first)] = static_cast<int>(leaves_.size());
  leaves_.push_back(first);
  leaf_slot_[static_cast<std::size_t>(first + 2)] = static_cast<int>(leaves_.size());
  leaves_.push_back(first + 2);
  return {first, first + 1, first + 2};
}

std::vector<int> Partition::centers_within(std::span<const double> c, double radius) const {
  std::vector<int> out;
  const double r2 = radius * radius;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.split_dim < 0) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < p_; ++i) {
        const double t = n.rect.center[i] - c[i];
        d2 += t * t;
      }
      if (d2 <= r2) out.push_back(id);
      continue;
    }
    double box2 = 0.0;
    for (std::size_t i = 0; i < p_ && box2 <= r2; ++i) {
      const double lo = n.rect.lower(i);
      const double hi = n.rect.upper(i);
      const double t = c[i] < lo ? lo - c[i] : (c[i] > hi ? c[i] - hi : 0.0);
      box2 += t * t;
    }
    if (box2 > r2) continue;
    for (int child : n.children) stack.push_back(child);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Partition::leaves_reaching(std::span<const double> q, double scale) const {
  constexpr double kPad = 1.0 + 1e-9;
  std::vector<int> out;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    const double r = scale * n.reach * kPad;
    const double r2 = r * r;
    if (n.split_dim < 0) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < p_; ++i) {
        const double t = n.rect.center[i] - q[i];
        d2 += t * t;
      }
      if (d2 <= r2) out.push_back(id);
      continue;
    }
    double box2 = 0.0;
    for (std::size_t i = 0; i < p_ && box2 <= r2; ++i) {
      const double lo = n.rect.lower(i);
      const double hi = n.rect.upper(i);
      const double t = q[i] < lo ? lo - q[i] : (q[i] > hi ? q[i] - hi : 0.0);
      box2 += t * t;
    }
    if (box2 > r2) continue;
    for (int child : n.children) stack.push_back(child);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Partition::set_sigma(int id, double sigma) { node(id).rect.sigma_cache = sigma; }

double Partition::volume_sum() const {
  std::map<int, std::size_t> per_level;
  for (int id : leaves_) ++per_level[rect(id).total_level()];
  long double sum = 0.0L;
  for (auto it = per_level.rbegin(); it != per_level.rend(); ++it) {
    sum += static_cast<long double>(it->second) * std::pow(3.0L, -it->first);
  }
  return static_cast<double>(sum);
}

double Partition::max_half_diagonal() const {
  double best = 0.0;
  for (int id : leaves_) best = std::max(best, half_diagonal(rect(id)));
  return best;
}

double Partition::min_half_diagonal() const {
  double best = std::numeric_limits<double>::infinity();
  for (int id : leaves_) best = std::min(best, half_diagonal(rect(id)));
  return best;
}

double median(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty sequence");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + (upper - lower) / 2.0;
}

PartitionState::PartitionState(std::size_t p)
    : partition_(p), f_min_(std::numeric_limits<double>::infinity()) {}

void PartitionState::record_sample(std::vector<double> x, double value) {
  const int leaf = partition_.locate(x);
  if (history_.empty() || value < f_min_) {
    f_min_ = value;
    x_min_ = x;
    improvements_.push_back(Improvement{history_.size() + 1, value, x});
  }
  partition_.add_sample(leaf, Sample{std::move(x), value});
  history_.push_back(value);
  trace_.push_back(TracePoint{history_.size(), f_min_});
}

double PartitionState::f_median() const { return median(history_); }

const Improvement& PartitionState::best_within(std::size_t m) const {
  if (m == 0 || improvements_.empty()) {
    throw std::out_of_range("best_within: no evaluation recorded");
  }
  auto it = std::upper_bound(improvements_.begin(), improvements_.end(), m,
                             [](std::size_t v, const Improvement& i) { return v < i.m; });
  return *(it - 1);
}

std::vector<int> divide_rectangle(PartitionState& state, int id,
                                  std::span<const std::size_t> dims, const UnitObjective& f) {
  Partition& part = state.partition();
  if (!part.is_leaf(id)) {
    throw std::logic_error("divide_rectangle: rectangle " + std::to_string(id) +
                           " is not a leaf");
  }
  if (dims.empty()) throw std::invalid_argument("divide_rectangle: no dimensions given");
  const HyperRect& r = part.rect(id);
  const std::vector<int> levels = r.levels;
  const std::vector<std::int64_t> index = r.index;
  const std::vector<double> center = r.center;

  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(dims.size());
  for (std::size_t d : dims) {
    if (d >= levels.size()) {
      throw std::out_of_range("divide_rectangle: dimension " + std::to_string(d) +
                              " out of range");
    }
    if (levels[d] >= kMaxLevel) {
      throw std::domain_error("divide_rectangle: dimension " + std::to_string(d) +
                              " already at the maximum level");
    }
    double s = std::numeric_limits<double>::infinity();
    for (std::int64_t c : {std::int64_t{0}, std::int64_t{2}}) {
      std::vector<double> x = center;
      x[d] = cell_center(3 * index[d] + c, levels[d] + 1);
      const double v = f(x);
      s = std::min(s, v);
      state.record_sample(std::move(x), v);
    }
    order.emplace_back(s, d);
  }
  std::stable_sort(order.begin(), order.end());

  std::vector<int> created;
  int current = id;
  for (const auto& [s, d] : order) {
    const auto kids = part.trisect(current, d);
    created.push_back(kids[0]);
    created.push_back(kids[2]);
    current = kids[1];
  }
  created.push_back(current);
  return created;
}

void init_partition(PartitionState& state, const UnitObjective& f) {
  if (state.partition().size() != 1) {
    throw std::logic_error("init_partition: state is not fresh");
  }
  if (state.evaluations() == 0) {
    std::vector<double> c(state.dim(), 0.5);
    const double v = f(c);
    state.record_sample(std::move(c), v);
  }
  std::vector<std::size_t> dims(state.dim());
  std::iota(dims.begin(), dims.end(), std::size_t{0});
  divide_rectangle(state, state.partition().leaves().front(), dims, f);
}

}  // namespace stepdirect
