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

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stepdirect/hyperrect.hpp"

namespace stepdirect {

// Objective expressed in unit-cube coordinates.
using UnitObjective = std::function<double(std::span<const double>)>;

// The current cells of a trisection partition of [0,1]^p together with the
// trisection tree that produced them. Leaves are the live rectangles; ids are
// never reused.
class Partition {
 public:
  explicit Partition(std::size_t p);

  std::size_t dim() const { return p_; }

  // Throws std::out_of_range for an unknown id.
  const HyperRect& rect(int id) const;
  bool is_leaf(int id) const;
  std::span<const int> leaves() const { return leaves_; }
  std::size_t size() const { return leaves_.size(); }

  // Leaf containing x under the half-open membership rule.
  int locate(std::span<const double> x) const;

  // Appends a sample to a leaf; the sample must lie inside it.
  void add_sample(int leaf, Sample s);

  // Replaces leaf `id` by its three thirds along `dim` and returns their ids
  // (low, middle, high).
  std::array<int, 3> trisect(int id, std::size_t dim);

  // Leaves whose centres lie within `radius` of `c`.
  std::vector<int> centers_within(std::span<const double> c, double radius) const;

  // Leaves i whose ball of radius scale * d_i around c_i contains q, plus
  // possibly a few whose ball misses q by a relative 1e-9.
  std::vector<int> leaves_reaching(std::span<const double> q, double scale) const;

  void set_sigma(int id, double sigma);

  // Sum of leaf volumes, accumulated per total level to stay exact.
  double volume_sum() const;
  double max_half_diagonal() const;
  double min_half_diagonal() const;

 private:
  struct Node {
    HyperRect rect;
    int split_dim = -1;
    std::array<int, 3> children{-1, -1, -1};
    int parent = -1;
    double reach = 0.0;  // largest half-diagonal among the leaves below
  };

  Node& node(int id);
  const Node& node(int id) const;

  std::size_t p_;
  std::vector<Node> nodes_;
  std::vector<int> leaves_;
  std::vector<int> leaf_slot_;
};

struct TracePoint {
  std::size_t m = 0;
  double f_min = 0.0;
};

// A strict improvement of the incumbent at evaluation m.
struct Improvement {
  std::size_t m = 0;
  double f_min = 0.0;
  std::vector<double> x;
};

// Median of a non-empty sequence; the mean of the middle pair for even sizes.
double median(std::span<const double> values);

// Partition plus run bookkeeping: incumbent, evaluation history, counters and
// the (m, f_min) trace.
class PartitionState {
 public:
  explicit PartitionState(std::size_t p);

  std::size_t dim() const { return partition_.dim(); }
  Partition& partition() { return partition_; }
  const Partition& partition() const { return partition_; }

  // Stores an evaluated point in the unique leaf containing it and updates
  // f_min, x_min, the history, m and the trace.
  void record_sample(std::vector<double> x, double value);

  double f_min() const { return f_min_; }
  const std::vector<double>& x_min() const { return x_min_; }
  std::size_t evaluations() const { return history_.size(); }
  const std::vector<double>& history() const { return history_; }
  double f_median() const;
  const std::vector<TracePoint>& trace() const { return trace_; }
  const std::vector<Improvement>& improvements() const { return improvements_; }

  // Incumbent as it stood after the first m evaluations (m >= 1).
  const Improvement& best_within(std::size_t m) const;

  std::size_t iteration() const { return iteration_; }
  void next_iteration() { ++iteration_; }

 private:
  Partition partition_;
  double f_min_;
  std::vector<double> x_min_;
  std::vector<double> history_;
  std::vector<TracePoint> trace_;
  std::vector<Improvement> improvements_;
  std::size_t iteration_ = 1;
};

// DIRECT-style division of leaf `id` along `dims`: evaluates the centre +/-
// one third of the side along every listed dimension, then trisects along
// those dimensions in increasing order of min{f(c + d e_i), f(c - d e_i)}
// (lower index first on ties), always re-dividing the piece holding the
// centre. Every evaluated point ends up as the centre of a new leaf. Returns
// the ids of all leaves created.
std::vector<int> divide_rectangle(PartitionState& state, int id,
                                  std::span<const std::size_t> dims, const UnitObjective& f);

// Evaluates the cube centre (if nothing has been recorded yet) and divides
// the unit cube along every dimension, leaving 2p + 1 rectangles.
void init_partition(PartitionState& state, const UnitObjective& f);

}  // namespace stepdirect
