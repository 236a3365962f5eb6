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

#include "stepdirect/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <utility>

namespace stepdirect {

namespace {

template <typename E>
struct NamedValue {
  const char* name;
  E value;
};

constexpr NamedValue<Variant> kVariants[] = {
    {"step-direct", Variant::kStepDirect},
    {"step-direct-0", Variant::kStepDirect0},
    {"classic-direct", Variant::kClassicDirect},
};
constexpr NamedValue<SplitRule> kSplitRules[] = {
    {"auto", SplitRule::kAuto},
    {"importance", SplitRule::kImportance},
    {"classic", SplitRule::kClassic},
};
constexpr NamedValue<LocalFrame> kFrames[] = {
    {"rectangle", LocalFrame::kRectangle},
    {"unit-cube", LocalFrame::kUnitCube},
};
constexpr NamedValue<DirectionStrategy> kStrategies[] = {
    {"coordinate", DirectionStrategy::kCoordinate},
    {"sphere", DirectionStrategy::kUnitSphere},
};

template <typename E, std::size_t N>
std::string NameOf(const NamedValue<E> (&table)[N], E value) {
  for (const auto& entry : table) {
    if (entry.value == value) return entry.name;
  }
  return "unknown";
}

template <typename E, std::size_t N>
E Parse(const NamedValue<E> (&table)[N], const std::string& name, const char* what) {
  std::string known;
  for (const auto& entry : table) {
    if (name == entry.name) return entry.value;
    known += known.empty() ? "" : ", ";
    known += entry.name;
  }
  throw std::invalid_argument(std::string("unknown ") + what + " \"" + name +
                              "\" (expected one of: " + known + ")");
}

}  // namespace

std::string to_string(Variant v) { return NameOf(kVariants, v); }
Variant parse_variant(const std::string& name) { return Parse(kVariants, name, "algorithm"); }
std::string to_string(SplitRule r) { return NameOf(kSplitRules, r); }
SplitRule parse_split_rule(const std::string& name) {
  return Parse(kSplitRules, name, "split rule");
}
std::string to_string(LocalFrame f) { return NameOf(kFrames, f); }
LocalFrame parse_local_frame(const std::string& name) {
  return Parse(kFrames, name, "local frame");
}
std::string to_string(DirectionStrategy s) { return NameOf(kStrategies, s); }
DirectionStrategy parse_direction_strategy(const std::string& name) {
  return Parse(kStrategies, name, "direction strategy");
}

void RunConfig::validate(std::size_t p) const {
  if (p == 0) throw std::invalid_argument("run config: dimension must be positive");
  if (m_max <= 2 * p + 1) {
    throw std::invalid_argument("run config: m_max must exceed 2p + 1 = " +
                                std::to_string(2 * p + 1));
  }
  selection.validate();
  local_params(p).validate();
}

LocalSearchParams RunConfig::local_params(std::size_t p) const {
  return local ? *local : LocalSearchParams::defaults_for(p);
}

PartitionSummary summarize(const Partition& partition) {
  PartitionSummary s;
  s.rectangles = partition.size();
  s.max_half_diagonal = partition.max_half_diagonal();
  s.min_half_diagonal = partition.min_half_diagonal();
  s.min_total_level = std::numeric_limits<int>::max();
  for (int id : partition.leaves()) {
    const int level = partition.rect(id).total_level();
    s.min_total_level = std::min(s.min_total_level, level);
    s.max_total_level = std::max(s.max_total_level, level);
  }
  s.volume_sum = partition.volume_sum();
  return s;
}

RunAborted::RunAborted(RunResult partial, std::vector<double> point, const std::string& what)
    : std::runtime_error(what), partial_(std::move(partial)), point_(std::move(point)) {}

std::vector<std::size_t> choose_split_dim(const HyperRect& r, std::span<const double> w) {
  const std::size_t p = r.dim();
  if (r.terminal()) throw std::domain_error("choose_split_dim: rectangle cannot be divided");
  if (!w.empty()) {
    validate_importance(w, p);
    std::size_t best = p;
    double best_value = -1.0;
    for (std::size_t i = 0; i < p; ++i) {
      if (!r.splittable(i)) continue;
      const double v = w[i] * r.side(i);
      if (v > best_value) {
        best_value = v;
        best = i;
      }
    }
    return {best};
  }
  int shallowest = kMaxLevel;
  for (std::size_t i = 0; i < p; ++i) {
    if (r.splittable(i)) shallowest = std::min(shallowest, r.levels[i]);
  }
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < p; ++i) {
    if (r.levels[i] == shallowest) dims.push_back(i);
  }
  return dims;
}

StepDirect::StepDirect(const StepwiseObjective& objective, RunConfig config)
    : objective_(objective), config_(std::move(config)), state_(objective.dim()) {
  const std::size_t p = objective_.dim();
  objective_.bounds().validate();
  config_.validate(p);
  local_ = config_.local_params(p);
  const auto w = objective_.importance();
  if (!w.empty()) {
    validate_importance(w, p);
    weights_.assign(w.begin(), w.end());
  }
  if (config_.variant != Variant::kClassicDirect) {
    if (config_.split_rule == SplitRule::kImportance && weights_.empty()) {
      split_weights_.assign(p, 1.0 / static_cast<double>(p));
    } else if (config_.split_rule != SplitRule::kClassic) {
      split_weights_ = weights_;
    }
  }
}

double StepDirect::EvalUnit(std::span<const double> u) const {
  std::vector<double> raw = from_unit_cube(u, objective_.bounds());
  double v = 0.0;
  try {
    v = objective_.eval(raw);
  } catch (const ObjectiveError&) {
    throw;
  } catch (const std::exception& e) {
    throw ObjectiveError(std::move(raw), e.what());
  }
  if (!std::isfinite(v)) throw ObjectiveError(std::move(raw), "non-finite value");
  return v;
}

std::vector<int> StepDirect::Select(bool& fallback) {
  Partition& part = state_.partition();
  std::vector<RectScore> scores;
  std::vector<int> selected;
  fallback = false;

  if (config_.variant == Variant::kClassicDirect) {
    double f_min = std::numeric_limits<double>::infinity();
    for (int id : part.leaves()) {
      const HyperRect& r = part.rect(id);
      if (r.terminal()) continue;
      const double fc = r.f_center.value_or(r.f_best);
      f_min = std::min(f_min, fc);
      scores.push_back(RectScore{id, half_diagonal(r), 1.0, fc});
    }
    selected = select_classic_direct(scores, config_.selection.epsilon, f_min);
  } else {
    refresh_variability(part, config_.selection, changed_);
    changed_.clear();
    for (const RectScore& s : cached_scores(part)) {
      if (!part.rect(s.id).terminal()) scores.push_back(s);
    }
    selected = select_step_direct(scores, config_.selection.epsilon, state_.f_min(),
                                  state_.f_median());
  }

  if (selected.empty() && !scores.empty()) {
    const auto largest = std::min_element(
        scores.begin(), scores.end(), [](const RectScore& a, const RectScore& b) {
          if (a.product() != b.product()) return a.product() > b.product();
          if (a.f_best != b.f_best) return a.f_best < b.f_best;
          return a.id < b.id;
        });
    selected.push_back(largest->id);
    fallback = true;
  }
  return selected;
}

StepDirect::LocalOutcome StepDirect::LocalSearch(int id) const {
  const HyperRect& r = state_.partition().rect(id);
  const std::size_t p = r.dim();
  const Sample& start = r.best();

  std::seed_seq seq{static_cast<std::uint32_t>(config_.seed),
                    static_cast<std::uint32_t>(config_.seed >> 32),
                    static_cast<std::uint32_t>(id)};
  Rng rng(seq);

  std::vector<double> lower(p), upper(p), half(p);
  for (std::size_t i = 0; i < p; ++i) {
    lower[i] = r.lower(i);
    upper[i] = r.upper(i);
    half[i] = r.side(i) / 2.0;
  }

  // kRectangle maps H_j onto [-1, 1]^p with c_j at the origin.
  const bool rescale = config_.local_frame == LocalFrame::kRectangle;
  auto to_cube = [&](std::span<const double> u) {
    std::vector<double> x(u.begin(), u.end());
    if (rescale) {
      for (std::size_t i = 0; i < p; ++i) {
        x[i] = std::clamp(r.center[i] + u[i] * half[i], lower[i], upper[i]);
      }
    }
    return x;
  };

  Bounds box = rescale ? Bounds{std::vector<double>(p, -1.0), std::vector<double>(p, 1.0)}
                       : Bounds{lower, upper};
  std::vector<double> u0 = start.x;
  if (rescale) {
    for (std::size_t i = 0; i < p; ++i) {
      u0[i] = std::clamp((start.x[i] - r.center[i]) / half[i], -1.0, 1.0);
    }
  }

  const LocalSearchResult res = local_search(
      [&](std::span<const double> u) { return EvalUnit(to_cube(u)); }, box, u0, local_,
      weights_, rng);

  LocalOutcome out;
  out.samples.reserve(res.trace.size());
  for (const Sample& s : res.trace) out.samples.push_back(Sample{to_cube(s.x), s.value});
  return out;
}

std::vector<StepDirect::LocalOutcome> StepDirect::LocalSearches(std::span<const int> ids) const {
  std::vector<LocalOutcome> out(ids.size());
  const std::size_t workers =
      config_.parallel ? std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                                               ids.size())
                       : 1;
  if (workers <= 1) {
    for (std::size_t k = 0; k < ids.size(); ++k) out[k] = LocalSearch(ids[k]);
    return out;
  }

  std::vector<std::exception_ptr> errors(ids.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < ids.size(); k = next++) {
      try {
        out[k] = LocalSearch(ids[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

RunResult StepDirect::Result() const {
  RunResult res;
  res.evaluations = state_.evaluations();
  const std::size_t m = std::min(res.evaluations, config_.m_max);
  if (m > 0) {
    const Improvement& best = state_.best_within(m);
    res.f_min = best.f_min;
    res.x_min_unit = best.x;
    res.x_min = from_unit_cube(best.x, objective_.bounds());
  } else {
    res.f_min = std::numeric_limits<double>::infinity();
  }
  res.trace.assign(state_.trace().begin(),
                   state_.trace().begin() + static_cast<std::ptrdiff_t>(m));
  res.iterations = log_;
  res.partition = summarize(state_.partition());
  return res;
}

RunResult StepDirect::run() {
  if (ran_) throw std::logic_error("StepDirect::run: already ran");
  ran_ = true;
  const UnitObjective f = [this](std::span<const double> u) { return EvalUnit(u); };

  try {
    init_partition(state_, f);
    while (state_.evaluations() < config_.m_max) {
      IterationLog entry;
      entry.iteration = state_.iteration();
      entry.selected = Select(entry.fallback);
      if (entry.selected.empty()) break;  // every rectangle is at the maximum depth

      std::vector<LocalOutcome> outcomes;
      if (config_.variant == Variant::kStepDirect) outcomes = LocalSearches(entry.selected);

      for (std::size_t k = 0; k < entry.selected.size(); ++k) {
        const int id = entry.selected[k];
        Partition& part = state_.partition();
        if (!outcomes.empty()) {
          for (Sample& s : outcomes[k].samples) {
            changed_.push_back(part.rect(part.locate(s.x)).center);
            state_.record_sample(std::move(s.x), s.value);
          }
        }
        const auto dims = choose_split_dim(part.rect(id), split_weights_);
        changed_.push_back(part.rect(id).center);
        for (int child : divide_rectangle(state_, id, dims, f)) {
          changed_.push_back(part.rect(child).center);
        }
      }
      entry.m_after = state_.evaluations();
      log_.push_back(std::move(entry));
      state_.next_iteration();
    }
  } catch (const ObjectiveError& e) {
    throw RunAborted(Result(), e.point(), e.what());
  }
  return Result();
}

RunResult run(const StepwiseObjective& objective, const RunConfig& config) {
  StepDirect solver(objective, config);
  return solver.run();
}

}  // namespace stepdirect
