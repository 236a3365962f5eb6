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
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stepdirect/bounds.hpp"
#include "stepdirect/objective.hpp"

namespace stepdirect {

inline constexpr const char* kForestFormat = "forest-v1";
inline constexpr const char* kSplitConvention = "le-left";

// feature == -1 marks a leaf. Internal nodes route left iff
// x[feature] <= threshold.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
};

// Root at index 0.
struct Tree {
  double weight = 1.0;
  std::vector<TreeNode> nodes;
};

struct Forest {
  std::size_t p = 0;
  std::vector<Tree> trees;
  Bounds bounds;
  std::vector<double> importance;  // empty when the file carries none
};

double eval_tree(const Tree& tree, std::span<const double> x);

// sum_t weight_t * eval_tree(tree_t, x). Throws std::domain_error when x does
// not have p components.
double eval_ensemble(const Forest& forest, std::span<const double> x);

// Share of internal nodes splitting on each feature; uniform for a forest
// made only of leaves.
std::vector<double> split_count_importance(const Forest& forest);

// Structural problems of one tree (dangling children, cycles, nodes with no
// or several parents, bad feature indices), one message per problem naming
// the node.
std::vector<std::string> validate_tree(const Tree& tree, std::size_t p, std::size_t tree_index);

// Per-feature [min, max] of the split thresholds, padded by 10% of the range
// (or of max(|t|, 1) when all thresholds coincide); [0, 1] for unused
// features.
Bounds threshold_bounds(const Forest& forest);

class ForestError : public std::runtime_error {
 public:
  explicit ForestError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// Every schema and structure violation in a forest-v1 document.
std::vector<std::string> validate_forest_json(const nlohmann::json& doc);

// Throws ForestError listing all violations.
Forest forest_from_json(const nlohmann::json& doc);
nlohmann::json forest_to_json(const Forest& forest);

// Throws std::runtime_error when the file cannot be read or parsed and
// ForestError when the document is invalid.
Forest load_forest(const std::string& path);
void save_forest(const Forest& forest, const std::string& path);

class ForestObjective final : public StepwiseObjective {
 public:
  // Uses the forest's own importance vector, or split counts when absent.
  explicit ForestObjective(Forest forest);

  const Bounds& bounds() const override { return forest_.bounds; }
  double eval(std::span<const double> x) const override { return eval_ensemble(forest_, x); }
  std::span<const double> importance() const override { return importance_; }

  const Forest& forest() const { return forest_; }

 private:
  Forest forest_;
  std::vector<double> importance_;
};

}  // namespace stepdirect
