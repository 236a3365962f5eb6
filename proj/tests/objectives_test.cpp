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

#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "stepdirect/forest.hpp"
#include "stepdirect/synthetic.hpp"

namespace stepdirect {
namespace {

using json = nlohmann::json;

Tree Leaf(double v, double weight = 1.0) { return Tree{weight, {TreeNode{-1, 0.0, -1, -1, v}}}; }

Tree Stump(int feature, double threshold, double left, double right, double weight = 1.0) {
  return Tree{weight,
              {TreeNode{feature, threshold, 1, 2, 0.0}, TreeNode{-1, 0.0, -1, -1, left},
               TreeNode{-1, 0.0, -1, -1, right}}};
}

Forest TwoFeatureForest(std::vector<Tree> trees) {
  Forest f;
  f.p = 2;
  f.trees = std::move(trees);
  f.bounds = Bounds::unit(2);
  return f;
}

json ValidDoc() {
  return forest_to_json(TwoFeatureForest({Stump(0, 0.5, 1.0, 3.0), Stump(1, 0.25, 2.0, 4.0, 0.5)}));
}

bool Mentions(const std::vector<std::string>& issues, const std::string& text) {
  for (const auto& s : issues) {
    if (s.find(text) != std::string::npos) return true;
  }
  return false;
}

TEST(EvalTree, SingleLeaf) {
  const Tree t = Leaf(7.0);
  EXPECT_EQ(eval_tree(t, std::vector<double>{0.1, 123.0}), 7.0);
  EXPECT_EQ(eval_tree(t, std::vector<double>{-5.0, 0.0}), 7.0);
}

TEST(EvalTree, Stump) {
  const Tree t = Stump(0, 0.5, 1.0, 3.0);
  EXPECT_EQ(eval_tree(t, std::vector<double>{0.25, 0.9}), 1.0);
  EXPECT_EQ(eval_tree(t, std::vector<double>{0.75, 0.1}), 3.0);
  EXPECT_EQ(eval_tree(t, std::vector<double>{0.5, 0.1}), 1.0);  // <= goes left
}

TEST(EvalTree, DepthTwo) {
  Tree t;
  t.nodes = {TreeNode{0, 0.5, 1, 4, 0.0}, TreeNode{1, 0.5, 2, 3, 0.0},
             TreeNode{-1, 0.0, -1, -1, 1.0}, TreeNode{-1, 0.0, -1, -1, 2.0},
             TreeNode{-1, 0.0, -1, -1, 3.0}};
  EXPECT_EQ(eval_tree(t, std::vector<double>{0.4, 0.6}), 2.0);
  EXPECT_EQ(eval_tree(t, std::vector<double>{0.4, 0.4}), 1.0);
  EXPECT_EQ(eval_tree(t, std::vector<double>{0.6, 0.0}), 3.0);
}

TEST(EvalEnsemble, WeightedSum) {
  const Forest one = TwoFeatureForest({Stump(0, 0.5, 1.0, 3.0)});
  const std::vector<double> x{0.25, 0.5};
  EXPECT_EQ(eval_ensemble(one, x), eval_tree(one.trees[0], x));
  const Forest two = TwoFeatureForest({Stump(0, 0.5, 1.0, 3.0, 0.5), Stump(0, 0.5, 2.0, 4.0, 0.5)});
  EXPECT_EQ(eval_ensemble(two, x), 1.5);
  EXPECT_THROW(eval_ensemble(two, std::vector<double>{0.25}), std::domain_error);
}

TEST(EvalEnsemble, FinitelyManyValuesOnGrid) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Tree> trees;
  std::set<double> cuts0;
  std::set<double> cuts1;
  for (int t = 0; t < 10; ++t) {
    const int feature = t % 2;
    const double th = unit(rng);
    (feature == 0 ? cuts0 : cuts1).insert(th);
    trees.push_back(Stump(feature, th, unit(rng), unit(rng), unit(rng)));
  }
  const Forest f = TwoFeatureForest(trees);
  std::set<double> values;
  for (int a = 0; a < 200; ++a) {
    for (int b = 0; b < 200; ++b) {
      values.insert(eval_ensemble(f, std::vector<double>{(a + 0.5) / 200.0, (b + 0.5) / 200.0}));
    }
  }
  EXPECT_LE(values.size(), (cuts0.size() + 1) * (cuts1.size() + 1));
}

TEST(Importance, SplitCounts) {
  EXPECT_EQ(split_count_importance(TwoFeatureForest({Stump(0, 0.1, 0, 1), Stump(0, 0.2, 0, 1)})),
            (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(split_count_importance(TwoFeatureForest({Stump(0, 0.1, 0, 1), Stump(1, 0.2, 0, 1)})),
            (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(split_count_importance(TwoFeatureForest({Leaf(1.0)})),
            (std::vector<double>{0.5, 0.5}));
}

TEST(Importance, HandCountOnDocument) {
  const json doc = ValidDoc();
  std::vector<double> counts(2, 0.0);
  for (const auto& t : doc["trees"]) {
    for (const auto& n : t["nodes"]) {
      if (n["feature"].get<int>() >= 0) counts[n["feature"].get<int>()] += 1.0;
    }
  }
  const double total = counts[0] + counts[1];
  const auto w = split_count_importance(forest_from_json(doc));
  EXPECT_DOUBLE_EQ(w[0], counts[0] / total);
  EXPECT_DOUBLE_EQ(w[1], counts[1] / total);
}

TEST(ForestJson, RoundTrip) {
  const json doc = ValidDoc();
  EXPECT_TRUE(validate_forest_json(doc).empty());
  const Forest f = forest_from_json(doc);
  EXPECT_EQ(forest_to_json(f), doc);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Forest g = forest_from_json(json::parse(doc.dump()));
  for (int n = 0; n < 100; ++n) {
    const std::vector<double> x{unit(rng), unit(rng)};
    EXPECT_EQ(eval_ensemble(f, x), eval_ensemble(g, x));
  }
}

TEST(ForestJson, NumbersAsStrings) {
  json doc = ValidDoc();
  doc["trees"][0]["nodes"][0]["threshold"] = "0.1";
  doc["trees"][0]["weight"] = "2";
  ASSERT_TRUE(validate_forest_json(doc).empty());
  const Forest f = forest_from_json(doc);
  EXPECT_EQ(f.trees[0].nodes[0].threshold, 0.1);
  EXPECT_EQ(f.trees[0].weight, 2.0);
}

TEST(ForestJson, DanglingChildNamesNode) {
  json doc = ValidDoc();
  doc["trees"][1]["nodes"][0]["right"] = 9;
  const auto issues = validate_forest_json(doc);
  EXPECT_TRUE(Mentions(issues, "trees[1].nodes[0]"));
  EXPECT_TRUE(Mentions(issues, "dangling"));
  EXPECT_THROW(forest_from_json(doc), ForestError);
}

TEST(ForestJson, WrongFormatVersion) {
  json doc = ValidDoc();
  doc["format"] = "forest-v2";
  EXPECT_TRUE(Mentions(validate_forest_json(doc), "\"forest-v1\""));
}

TEST(ForestJson, WrongSplitConvention) {
  json doc = ValidDoc();
  doc["split_convention"] = "lt-left";
  EXPECT_TRUE(Mentions(validate_forest_json(doc), "le-left"));
}

TEST(ForestJson, CycleAndSharedChild) {
  json doc = ValidDoc();
  doc["trees"][0]["nodes"][0]["right"] = 1;  // node 1 gets two parents, node 2 none
  const auto issues = validate_forest_json(doc);
  EXPECT_TRUE(Mentions(issues, "trees[0].nodes[1]"));
  EXPECT_TRUE(Mentions(issues, "trees[0].nodes[2]"));

  Tree loop;
  loop.nodes = {TreeNode{0, 0.5, 1, 2, 0.0}, TreeNode{1, 0.5, 0, 2, 0.0},
                TreeNode{-1, 0.0, -1, -1, 1.0}};
  EXPECT_FALSE(validate_tree(loop, 2, 0).empty());
}

TEST(ForestJson, FeatureOutOfRange) {
  json doc = ValidDoc();
  doc["trees"][0]["nodes"][0]["feature"] = 5;
  EXPECT_TRUE(Mentions(validate_forest_json(doc), "trees[0].nodes[0]"));
}

TEST(ForestJson, MissingFileAndSaveLoad) {
  EXPECT_THROW(load_forest("/nonexistent/forest.json"), std::runtime_error);
  const auto path = std::filesystem::temp_directory_path() / "stepdirect_forest_test.json";
  const Forest f = forest_from_json(ValidDoc());
  save_forest(f, path.string());
  const Forest g = load_forest(path.string());
  EXPECT_EQ(forest_to_json(g), forest_to_json(f));
  std::filesystem::remove(path);
}

TEST(ForestJson, ThresholdBoundsPadding) {
  const Forest f = TwoFeatureForest({Stump(0, 1.0, 0, 1), Stump(0, 3.0, 0, 1)});
  const Bounds b = threshold_bounds(f);
  EXPECT_DOUBLE_EQ(b.lower[0], 0.8);
  EXPECT_DOUBLE_EQ(b.upper[0], 3.2);
  EXPECT_EQ(b.lower[1], 0.0);
  EXPECT_EQ(b.upper[1], 1.0);
}

TEST(ForestObjective, ImportanceFromFileOrCounts) {
  Forest f = TwoFeatureForest({Stump(0, 0.1, 0, 1)});
  const ForestObjective counted(f);
  EXPECT_EQ(std::vector<double>(counted.importance().begin(), counted.importance().end()),
            (std::vector<double>{1.0, 0.0}));
  f.importance = {0.3, 0.7};
  const ForestObjective obj(f);
  EXPECT_EQ(obj.importance()[1], 0.7);
}

TEST(QuantizedSphere, Examples) {
  const QuantizedSphere s(1, 4, {0.5});
  EXPECT_EQ(s.eval(std::vector<double>{0.5}), 0.0);
  EXPECT_EQ(s.eval(std::vector<double>{0.9}), 0.0);
  EXPECT_EQ(s.eval(std::vector<double>{0.0}), 0.25);
  EXPECT_DOUBLE_EQ(s.plateau_radius(), 0.5);
}

TEST(QuantizedSphere, ZeroExactlyOnPlateau) {
  const QuantizedSphere s(2, 25, {0.45, 0.55});
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 0; n < 5000; ++n) {
    const std::vector<double> x{unit(rng), unit(rng)};
    const double r2 = (x[0] - 0.45) * (x[0] - 0.45) + (x[1] - 0.55) * (x[1] - 0.55);
    const double v = s.eval(x);
    EXPECT_GE(v, 0.0);
    EXPECT_EQ(v == 0.0, 25.0 * r2 < 1.0);
  }
}

TEST(QuantizedSphere, RejectsBadParameters) {
  EXPECT_THROW(QuantizedSphere(2, 1, {0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(QuantizedSphere(2, 4, {0.5}), std::invalid_argument);
  EXPECT_THROW(QuantizedSphere(1, 4, {1.5}), std::invalid_argument);
}

TEST(RandomAxisStepwise, OptimumIsCellMinimum) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RandomAxisStepwise f(3, 4, seed);
    double best = INFINITY;
    for (double v : f.cell_values()) best = std::min(best, v);
    EXPECT_EQ(f.optimum(), best);
    EXPECT_EQ(f.eval(f.optimum_point()), best);
    EXPECT_EQ(f.cell_values().size(), 125u);
  }
}

TEST(RandomAxisStepwise, SingleCellIsConstant) {
  const RandomAxisStepwise f(2, 0, 3);
  ASSERT_EQ(f.cell_values().size(), 1u);
  EXPECT_EQ(f.eval(std::vector<double>{0.1, 0.9}), f.cell_values()[0]);
  EXPECT_EQ(f.eval(std::vector<double>{0.7, 0.2}), f.cell_values()[0]);
}

TEST(RandomAxisStepwise, SameCellSameValue) {
  const RandomAxisStepwise f(2, 5, 8);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 0; n < 500; ++n) {
    const std::vector<double> a{unit(rng), unit(rng)};
    const std::vector<double> b{unit(rng), unit(rng)};
    if (f.cell_of(a) == f.cell_of(b)) EXPECT_EQ(f.eval(a), f.eval(b));
  }
}

TEST(Objectives, PureUnderRepetition) {
  const QuantizedSphere s(3, 10, {0.2, 0.4, 0.6});
  const RandomAxisStepwise r(3, 5, 1);
  const ForestObjective fo(forest_from_json(ValidDoc()));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 0; n < 1000; ++n) {
    const std::vector<double> x{unit(rng), unit(rng), unit(rng)};
    EXPECT_EQ(s.eval(x), s.eval(x));
    EXPECT_EQ(r.eval(x), r.eval(x));
    const std::vector<double> y{x[0], x[1]};
    EXPECT_EQ(fo.eval(y), fo.eval(y));
  }
}

}  // namespace
}  // namespace stepdirect
