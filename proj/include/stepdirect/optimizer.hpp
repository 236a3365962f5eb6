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
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stepdirect/local_search.hpp"
#include "stepdirect/objective.hpp"
#include "stepdirect/partition.hpp"
#include "stepdirect/selection.hpp"

namespace stepdirect {

enum class Variant {
  kStepDirect,    // variability-aware selection plus local search
  kStepDirect0,   // variability-aware selection, no local search
  kClassicDirect, // centre values, longest-side splits, no local search
};

enum class SplitRule {
  kAuto,        // importance-weighted when the objective provides weights
  kImportance,  // single dimension maximising w_i * side_i
  kClassic,     // every longest side, in DIRECT order
};

// Coordinates in which the local search over H_j runs. kRectangle maps H_j
// onto [-1,1]^p centred at c_j, so a step of 1 from the centre reaches the
// rectangle's faces. kUnitCube searches H_j in unit-cube coordinates.
enum class LocalFrame { kRectangle, kUnitCube };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);
std::string to_string(SplitRule r);
SplitRule parse_split_rule(const std::string& name);
std::string to_string(LocalFrame f);
LocalFrame parse_local_frame(const std::string& name);
std::string to_string(DirectionStrategy s);
DirectionStrategy parse_direction_strategy(const std::string& name);

struct RunConfig {
  Variant variant = Variant::kStepDirect;
  std::size_t m_max = 2000;
  SelectionParams selection;
  std::optional<LocalSearchParams> local;  // LocalSearchParams::defaults_for(p) when unset
  SplitRule split_rule = SplitRule::kAuto;
  LocalFrame local_frame = LocalFrame::kRectangle;
  std::uint64_t seed = 0;
  bool parallel = false;  // run the local searches of one iteration concurrently

  // Throws std::invalid_argument for m_max <= 2p + 1 or invalid parameters.
  void validate(std::size_t p) const;
  LocalSearchParams local_params(std::size_t p) const;
};

struct IterationLog {
  std::size_t iteration = 0;
  std::vector<int> selected;  // in processing order
  bool fallback = false;      // S was empty; the largest rectangle was taken
  std::size_t m_after = 0;
};

struct PartitionSummary {
  std::size_t rectangles = 0;
  double max_half_diagonal = 0.0;
  double min_half_diagonal = 0.0;
  int min_total_level = 0;
  int max_total_level = 0;
  double volume_sum = 0.0;
};

PartitionSummary summarize(const Partition& partition);

struct RunResult {
  double f_min = 0.0;
  std::vector<double> x_min;       // raw units
  std::vector<double> x_min_unit;  // unit-cube coordinates
  std::vector<TracePoint> trace;   // truncated at m_max
  std::vector<IterationLog> iterations;
  std::size_t evaluations = 0;     // objective calls actually made
  PartitionSummary partition;
};

// Raised when the objective fails mid-run. Carries everything recorded up to
// the failure.
class RunAborted : public std::runtime_error {
 public:
  RunAborted(RunResult partial, std::vector<double> point, const std::string& what);
  const RunResult& partial() const { return partial_; }
  const std::vector<double>& point() const { return point_; }

 private:
  RunResult partial_;
  std::vector<double> point_;
};

// Dimensions to trisect `r` along. With weights: the single splittable
// dimension maximising w_i * 3^-k_i, lowest index on ties. Without: every
// splittable dimension of maximal side length. Throws std::invalid_argument
// for a malformed weight vector.
std::vector<std::size_t> choose_split_dim(const HyperRect& r, std::span<const double> w);

class StepDirect {
 public:
  StepDirect(const StepwiseObjective& objective, RunConfig config);

  // Runs to completion. Callable once.
  RunResult run();

  const PartitionState& state() const { return state_; }
  const RunConfig& config() const { return config_; }

 private:
  struct LocalOutcome {
    std::vector<Sample> samples;  // unit-cube coordinates
  };

  double EvalUnit(std::span<const double> u) const;
  std::vector<int> Select(bool& fallback);
  LocalOutcome LocalSearch(int id) const;
  std::vector<LocalOutcome> LocalSearches(std::span<const int> ids) const;
  RunResult Result() const;

  const StepwiseObjective& objective_;
  RunConfig config_;
  LocalSearchParams local_;
  std::vector<double> weights_;        // empty when the objective has none
  std::vector<double> split_weights_;  // empty for longest-side splits
  PartitionState state_;
  std::vector<IterationLog> log_;
  std::vector<std::vector<double>> changed_;  // centres touched since the last selection
  bool ran_ = false;
};

RunResult run(const StepwiseObjective& objective, const RunConfig& config);

}  // namespace stepdirect
