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

#include "stepdirect/forest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>

namespace stepdirect {

using nlohmann::json;

double eval_tree(const Tree& tree, std::span<const double> x) {
  std::size_t i = 0;
  // A validated tree reaches a leaf in fewer than nodes.size() steps.
  for (std::size_t steps = 0; steps <= tree.nodes.size(); ++steps) {
    const TreeNode& n = tree.nodes[i];
    if (n.is_leaf()) return n.value;
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                       : n.right);
  }
  throw std::logic_error("eval_tree: routing did not terminate");
}

double eval_ensemble(const Forest& forest, std::span<const double> x) {
  if (x.size() != forest.p) {
    throw std::domain_error("eval_ensemble: expected " + std::to_string(forest.p) +
                            " features, got " + std::to_string(x.size()));
  }
  double sum = 0.0;
  for (const Tree& t : forest.trees) sum += t.weight * eval_tree(t, x);
  return sum;
}

std::vector<double> split_count_importance(const Forest& forest) {
  std::vector<double> w(forest.p, 0.0);
  std::size_t total = 0;
  for (const Tree& t : forest.trees) {
    for (const TreeNode& n : t.nodes) {
      if (n.is_leaf()) continue;
      w[static_cast<std::size_t>(n.feature)] += 1.0;
      ++total;
    }
  }
  if (total == 0) {
    std::fill(w.begin(), w.end(), forest.p ? 1.0 / static_cast<double>(forest.p) : 0.0);
    return w;
  }
  for (double& v : w) v /= static_cast<double>(total);
  return w;
}

std::vector<std::string> validate_tree(const Tree& tree, std::size_t p, std::size_t tree_index) {
  std::vector<std::string> issues;
  const std::string where = "trees[" + std::to_string(tree_index) + "]";
  const std::size_t n = tree.nodes.size();
  if (n == 0) {
    issues.push_back(where + ": tree has no nodes");
    return issues;
  }
  if (!std::isfinite(tree.weight)) issues.push_back(where + ": weight is not finite");

  std::vector<int> parents(n, 0);
  bool links_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const TreeNode& node = tree.nodes[i];
    const std::string at = where + ".nodes[" + std::to_string(i) + "]";
    if (node.is_leaf()) {
      if (node.feature != -1) issues.push_back(at + ": feature " + std::to_string(node.feature) +
                                               " is negative but not the leaf marker -1");
      if (!std::isfinite(node.value)) issues.push_back(at + ": leaf value is not finite");
      continue;
    }
    if (static_cast<std::size_t>(node.feature) >= p) {
      issues.push_back(at + ": feature " + std::to_string(node.feature) + " >= p = " +
                       std::to_string(p));
    }
    if (!std::isfinite(node.threshold)) issues.push_back(at + ": threshold is not finite");
    for (const auto& [name, child] : {std::pair{"left", node.left}, std::pair{"right", node.right}}) {
      if (child < 0 || static_cast<std::size_t>(child) >= n) {
        issues.push_back(at + ": " + name + " child index " + std::to_string(child) +
                         " is dangling (tree has " + std::to_string(n) + " nodes)");
        links_ok = false;
      } else if (static_cast<std::size_t>(child) == i) {
        issues.push_back(at + ": " + name + " child points to itself (cycle)");
        links_ok = false;
      } else {
        ++parents[static_cast<std::size_t>(child)];
      }
    }
  }
  if (!links_ok) return issues;

  if (parents[0] != 0) issues.push_back(where + ".nodes[0]: root has a parent (cycle)");
  for (std::size_t i = 1; i < n; ++i) {
    if (parents[i] > 1) {
      issues.push_back(where + ".nodes[" + std::to_string(i) + "]: node has " +
                       std::to_string(parents[i]) + " parents");
    }
  }
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const TreeNode& node = tree.nodes[stack.back()];
    stack.pop_back();
    if (node.is_leaf()) continue;
    for (int child : {node.left, node.right}) {
      const auto c = static_cast<std::size_t>(child);
      if (!seen[c]) {
        seen[c] = 1;
        stack.push_back(c);
      }
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!seen[i]) {
      issues.push_back(where + ".nodes[" + std::to_string(i) +
                       "]: node is unreachable from the root" +
                       (parents[i] == 0 ? std::string(" (no parent)") : std::string(" (cycle)")));
    }
  }
  return issues;
}

Bounds threshold_bounds(const Forest& forest) {
  Bounds b = Bounds::unit(forest.p);
  std::vector<double> lo(forest.p, std::numeric_limits<double>::infinity());
  std::vector<double> hi(forest.p, -std::numeric_limits<double>::infinity());
  for (const Tree& t : forest.trees) {
    for (const TreeNode& n : t.nodes) {
      if (n.is_leaf()) continue;
      const auto f = static_cast<std::size_t>(n.feature);
      lo[f] = std::min(lo[f], n.threshold);
      hi[f] = std::max(hi[f], n.threshold);
    }
  }
  for (std::size_t f = 0; f < forest.p; ++f) {
    if (lo[f] > hi[f]) continue;
    const double range = hi[f] - lo[f];
    const double pad = range > 0.0 ? 0.1 * range : 0.1 * std::max(std::abs(lo[f]), 1.0);
    b.lower[f] = lo[f] - pad;
    b.upper[f] = hi[f] + pad;
  }
  return b;
}

ForestError::ForestError(std::vector<std::string> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid forest";
        for (const auto& s : issues) msg += "\n  " + s;
        return msg;
      }()),
      issues_(std::move(issues)) {}

namespace {

// JSON numbers, or strings holding a complete decimal floating-point literal.
std::optional<double> ReadNumber(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return out;
  }
  return std::nullopt;
}

std::optional<long long> ReadInteger(const json& v) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e15) {
      return static_cast<long long>(d);
    }
  }
  return std::nullopt;
}

std::vector<double> ReadVector(const json& doc, const std::string& where, std::size_t p,
                               std::vector<std::string>& issues) {
  std::vector<double> out;
  if (!doc.is_array()) {
    issues.push_back(where + ": expected an array of " + std::to_string(p) + " numbers");
    return out;
  }
  if (doc.size() != p) {
    issues.push_back(where + ": expected " + std::to_string(p) + " entries, got " +
                     std::to_string(doc.size()));
  }
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto v = ReadNumber(doc[i]);
    if (!v || !std::isfinite(*v)) {
      issues.push_back(where + "[" + std::to_string(i) + "]: expected a finite number");
      out.push_back(0.0);
    } else {
      out.push_back(*v);
    }
  }
  return out;
}

Forest ParseForest(const json& doc, std::vector<std::string>& issues) {
  Forest forest;
  if (!doc.is_object()) {
    issues.push_back("document: expected a JSON object");
    return forest;
  }
  if (!doc.contains("format") || !doc["format"].is_string() ||
      doc["format"].get<std::string>() != kForestFormat) {
    issues.push_back(std::string("format: expected \"") + kForestFormat + "\", got " +
                     (doc.contains("format") ? doc["format"].dump() : std::string("nothing")));
  }
  if (!doc.contains("split_convention") || !doc["split_convention"].is_string() ||
      doc["split_convention"].get<std::string>() != kSplitConvention) {
    issues.push_back(std::string("split_convention: expected \"") + kSplitConvention +
                     "\", got " +
                     (doc.contains("split_convention") ? doc["split_convention"].dump()
                                                       : std::string("nothing")));
  }
  const auto p = doc.contains("p") ? ReadInteger(doc["p"]) : std::nullopt;
  if (!p || *p <= 0) {
    issues.push_back("p: expected a positive integer");
    return forest;
  }
  forest.p = static_cast<std::size_t>(*p);

  if (!doc.contains("trees") || !doc["trees"].is_array() || doc["trees"].empty()) {
    issues.push_back("trees: expected a non-empty array");
  } else {
    const json& trees = doc["trees"];
    for (std::size_t t = 0; t < trees.size(); ++t) {
      const std::string where = "trees[" + std::to_string(t) + "]";
      const json& jt = trees[t];
      Tree tree;
      if (!jt.is_object()) {
        issues.push_back(where + ": expected an object");
        continue;
      }
      const auto w = jt.contains("weight") ? ReadNumber(jt["weight"]) : std::nullopt;
      if (!w) {
        issues.push_back(where + ".weight: expected a number");
      } else {
        tree.weight = *w;
      }
      if (!jt.contains("nodes") || !jt["nodes"].is_array()) {
        issues.push_back(where + ".nodes: expected an array");
        continue;
      }
      bool nodes_ok = true;
      for (std::size_t i = 0; i < jt["nodes"].size(); ++i) {
        const json& jn = jt["nodes"][i];
        const std::string at = where + ".nodes[" + std::to_string(i) + "]";
        TreeNode node;
        if (!jn.is_object()) {
          issues.push_back(at + ": expected an object");
          nodes_ok = false;
          tree.nodes.push_back(node);
          continue;
        }
        const auto feature = jn.contains("feature") ? ReadInteger(jn["feature"]) : std::nullopt;
        if (!feature || *feature < std::numeric_limits<int>::min() ||
            *feature > std::numeric_limits<int>::max()) {
          issues.push_back(at + ".feature: expected an integer (-1 for a leaf)");
          nodes_ok = false;
        } else {
          node.feature = static_cast<int>(*feature);
        }
        if (node.is_leaf()) {
          const auto v = jn.contains("value") ? ReadNumber(jn["value"]) : std::nullopt;
          if (!v) {
            issues.push_back(at + ".value: leaf needs a numeric value");
            nodes_ok = false;
          } else {
            node.value = *v;
          }
        } else {
          const auto th = jn.contains("threshold") ? ReadNumber(jn["threshold"]) : std::nullopt;
          if (!th) {
            issues.push_back(at + ".threshold: expected a number");
            nodes_ok = false;
          } else {
            node.threshold = *th;
          }
          for (const char* key : {"left", "right"}) {
            const auto c = jn.contains(key) ? ReadInteger(jn[key]) : std::nullopt;
            if (!c || *c < std::numeric_limits<int>::min() ||
                *c > std::numeric_limits<int>::max()) {
              issues.push_back(at + "." + key + ": expected an integer node index");
              nodes_ok = false;
            } else {
              (std::string(key) == "left" ? node.left : node.right) = static_cast<int>(*c);
            }
          }
          if (jn.contains("value")) {
            if (const auto v = ReadNumber(jn["value"])) node.value = *v;
          }
        }
        tree.nodes.push_back(node);
      }
      if (nodes_ok) {
        for (auto& s : validate_tree(tree, forest.p, t)) issues.push_back(std::move(s));
      }
      forest.trees.push_back(std::move(tree));
    }
  }

  if (doc.contains("bounds")) {
    const json& jb = doc["bounds"];
    if (!jb.is_object() || !jb.contains("lower") || !jb.contains("upper")) {
      issues.push_back("bounds: expected {lower: [...], upper: [...]}");
    } else {
      forest.bounds.lower = ReadVector(jb["lower"], "bounds.lower", forest.p, issues);
      forest.bounds.upper = ReadVector(jb["upper"], "bounds.upper", forest.p, issues);
      if (forest.bounds.lower.size() == forest.p && forest.bounds.upper.size() == forest.p) {
        for (std::size_t i = 0; i < forest.p; ++i) {
          if (!(forest.bounds.lower[i] < forest.bounds.upper[i])) {
            issues.push_back("bounds: lower >= upper for feature " + std::to_string(i));
          }
        }
      }
    }
  } else if (issues.empty()) {
    forest.bounds = threshold_bounds(forest);
  }

  if (doc.contains("importance") && !doc["importance"].is_null()) {
    const std::size_t before = issues.size();
    forest.importance = ReadVector(doc["importance"], "importance", forest.p, issues);
    if (issues.size() == before) {
      try {
        validate_importance(forest.importance, forest.p);
      } catch (const std::invalid_argument& e) {
        issues.push_back(e.what());
      }
    }
  }
  return forest;
}

}  // namespace

std::vector<std::string> validate_forest_json(const json& doc) {
  std::vector<std::string> issues;
  ParseForest(doc, issues);
  return issues;
}

Forest forest_from_json(const json& doc) {
  std::vector<std::string> issues;
  Forest forest = ParseForest(doc, issues);
  if (!issues.empty()) throw ForestError(std::move(issues));
  return forest;
}

json forest_to_json(const Forest& forest) {
  json doc;
  doc["format"] = kForestFormat;
  doc["p"] = forest.p;
  doc["split_convention"] = kSplitConvention;
  doc["bounds"] = {{"lower", forest.bounds.lower}, {"upper", forest.bounds.upper}};
  if (!forest.importance.empty()) doc["importance"] = forest.importance;
  json trees = json::array();
  for (const Tree& t : forest.trees) {
    json nodes = json::array();
    for (const TreeNode& n : t.nodes) {
      nodes.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"value", n.value}});
    }
    trees.push_back({{"weight", t.weight}, {"nodes", std::move(nodes)}});
  }
  doc["trees"] = std::move(trees);
  return doc;
}

Forest load_forest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open forest file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("forest file '" + path + "' is not valid JSON: " + e.what());
  }
  return forest_from_json(doc);
}

void save_forest(const Forest& forest, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write forest file '" + path + "'");
  out << forest_to_json(forest).dump(1) << '\n';
}

ForestObjective::ForestObjective(Forest forest) : forest_(std::move(forest)) {
  forest_.bounds.validate();
  importance_ =
      forest_.importance.empty() ? split_count_importance(forest_) : forest_.importance;
}

}  // namespace stepdirect
