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

#include "stepdirect/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "stepdirect/forest.hpp"
#include "stepdirect/synthetic.hpp"

namespace stepdirect::bench {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Reads the members of one JSON object and rejects keys nobody asked for.
class Fields {
 public:
  Fields(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool has(const std::string& key) {
    used_.insert(key);
    return obj_.contains(key);
  }

  std::string path(const std::string& key) const {
    return where_.empty() ? key : where_ + "." + key;
  }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return obj_.at(key);
  }

  std::optional<double> number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_number()) throw ConfigError(path(key) + ": expected a number");
    return v.get<double>();
  }

  std::optional<std::uint64_t> unsigned_int(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_number_unsigned()) {
      throw ConfigError(path(key) + ": expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::optional<std::string> string(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_string()) throw ConfigError(path(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::optional<bool> boolean(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) throw ConfigError(path(key) + ": expected true or false");
    return v.get<bool>();
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!used_.count(key)) throw ConfigError(path(key) + ": unknown field");
    }
  }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> used_;
};

template <typename Fn>
auto Checked(const std::string& where, Fn fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

ObjectiveSpec ParseObjective(const json& doc, const std::string& where,
                             const std::string& base_dir) {
  Fields f(doc, where);
  ObjectiveSpec spec;
  const auto type = f.string("type");
  if (!type) throw ConfigError(f.path("type") + ": required");
  spec.type = *type;
  spec.name = f.string("name").value_or(spec.type);
  json& params = spec.params = json::object();

  if (spec.type == "quantized_sphere") {
    const auto p = f.unsigned_int("p").value_or(2);
    if (p == 0) throw ConfigError(f.path("p") + ": must be positive");
    const auto levels = f.unsigned_int("levels").value_or(25);
    if (levels < 2) throw ConfigError(f.path("levels") + ": must be >= 2");
    std::vector<double> x_star(p, 0.5);
    if (f.has("x_star")) {
      const json& v = f.raw("x_star");
      if (!v.is_array() || v.size() != p) {
        throw ConfigError(f.path("x_star") + ": expected an array of " + std::to_string(p) +
                          " numbers");
      }
      for (std::size_t i = 0; i < p; ++i) {
        if (!v[i].is_number() || v[i].get<double>() < 0.0 || v[i].get<double>() > 1.0) {
          throw ConfigError(f.path("x_star") + "[" + std::to_string(i) +
                            "]: expected a number in [0, 1]");
        }
        x_star[i] = v[i].get<double>();
      }
    }
    params = {{"p", p}, {"levels", levels}, {"x_star", x_star}};
  } else if (spec.type == "random_axis_stepwise") {
    const auto p = f.unsigned_int("p").value_or(2);
    if (p == 0) throw ConfigError(f.path("p") + ": must be positive");
    const auto cuts = f.unsigned_int("cuts").value_or(5);
    double cells = 1.0;
    for (std::uint64_t i = 0; i < p; ++i) cells *= static_cast<double>(cuts + 1);
    if (cells > 1e8) throw ConfigError(where + ": (cuts + 1)^p exceeds 1e8 cells");
    params = {{"p", p}, {"cuts", cuts}, {"seed", f.unsigned_int("seed").value_or(0)}};
  } else if (spec.type == "forest") {
    const auto file = f.string("path");
    if (!file) throw ConfigError(f.path("path") + ": required");
    fs::path resolved(*file);
    if (resolved.is_relative()) resolved = fs::path(base_dir) / resolved;
    params = {{"path", resolved.lexically_normal().string()}};
  } else {
    throw ConfigError(f.path("type") + ": unknown objective type \"" + spec.type +
                      "\" (expected quantized_sphere, random_axis_stepwise or forest)");
  }
  f.finish();
  return spec;
}

LocalSearchParams ParseLocal(const json& doc, const std::string& where) {
  Fields f(doc, where);
  LocalSearchParams lp;
  lp.tau = f.number("tau").value_or(lp.tau);
  lp.delta0 = f.number("delta0").value_or(lp.delta0);
  lp.delta_min = f.number("delta_min").value_or(lp.delta_min);
  lp.delta_max = f.number("delta_max").value_or(lp.delta_max);
  lp.t_max = f.unsigned_int("t_max").value_or(0);  // 0: ceil(1.5 p), filled in per objective
  lp.dir_count = f.unsigned_int("dir_count").value_or(lp.dir_count);
  if (const auto s = f.string("strategy")) {
    lp.strategy = Checked(f.path("strategy"), [&] { return parse_direction_strategy(*s); });
  }
  f.finish();
  return lp;
}

AlgorithmSpec ParseAlgorithm(const json& doc, const std::string& where) {
  AlgorithmSpec spec;
  if (doc.is_string()) {
    spec.name = doc.get<std::string>();
    spec.config.variant = Checked(where, [&] { return parse_variant(spec.name); });
    return spec;
  }
  Fields f(doc, where);
  const auto name = f.string("name");
  const auto variant = f.string("variant");
  if (!name && !variant) throw ConfigError(where + ": needs a name or a variant");
  spec.name = name ? *name : *variant;
  spec.config.variant =
      Checked(variant ? f.path("variant") : f.path("name"),
              [&] { return parse_variant(variant ? *variant : *name); });
  if (const auto b = f.unsigned_int("budget")) spec.budget = *b;
  SelectionParams& sel = spec.config.selection;
  sel.epsilon = f.number("epsilon").value_or(sel.epsilon);
  sel.lambda = f.number("lambda").value_or(sel.lambda);
  sel.epsilon_sigma = f.number("epsilon_sigma").value_or(sel.epsilon_sigma);
  Checked(where, [&] {
    sel.validate();
    return 0;
  });
  if (const auto s = f.string("split_rule")) {
    spec.config.split_rule = Checked(f.path("split_rule"), [&] { return parse_split_rule(*s); });
  }
  if (const auto s = f.string("local_frame")) {
    spec.config.local_frame =
        Checked(f.path("local_frame"), [&] { return parse_local_frame(*s); });
  }
  spec.config.parallel = f.boolean("parallel").value_or(false);
  if (f.has("local")) spec.config.local = ParseLocal(f.raw("local"), f.path("local"));
  f.finish();
  return spec;
}

std::string SafeName(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out.empty() ? "_" : out;
}

// RunConfig for one objective: budget and the per-dimension t_max default.
RunConfig Resolve(const AlgorithmSpec& alg, const ExperimentConfig& cfg, std::size_t p) {
  RunConfig rc = alg.config;
  rc.m_max = alg.budget.value_or(cfg.budget);
  if (rc.local && rc.local->t_max == 0) {
    rc.local->t_max = LocalSearchParams::defaults_for(p).t_max;
  }
  return rc;
}

std::string FormatFixed(double v, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

std::string Cell(double mean, double sd, int precision) {
  return FormatFixed(mean, precision) + "(±" + FormatFixed(sd, precision) + ")";
}

const CellReport* Find(const std::vector<CellReport>& reports, const std::string& alg,
                       const std::string& obj) {
  for (const auto& r : reports) {
    if (r.algorithm == alg && r.objective == obj) return &r;
  }
  return nullptr;
}

// Lowest mean objective per objective name, over all algorithms.
std::map<std::string, double> BestMeans(const std::vector<CellReport>& reports) {
  std::map<std::string, double> best;
  for (const auto& r : reports) {
    auto [it, inserted] = best.emplace(r.objective, r.mean_obj);
    if (!inserted) it->second = std::min(it->second, r.mean_obj);
  }
  return best;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
  if (!os) throw std::runtime_error("error writing " + path.string());
}

}  // namespace

ExperimentConfig parse_config(const json& doc, const std::string& base_dir) {
  Fields f(doc, "");
  ExperimentConfig cfg;

  const bool many = f.has("objectives");
  const bool one = f.has("objective");
  if (many == one) throw ConfigError("exactly one of objectives / objective is required");
  if (many) {
    const json& arr = f.raw("objectives");
    if (!arr.is_array() || arr.empty()) {
      throw ConfigError("objectives: expected a non-empty array");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      cfg.objectives.push_back(
          ParseObjective(arr[i], "objectives[" + std::to_string(i) + "]", base_dir));
    }
  } else {
    cfg.objectives.push_back(ParseObjective(f.raw("objective"), "objective", base_dir));
  }

  if (!f.has("algorithms")) throw ConfigError("algorithms: required");
  const json& algs = f.raw("algorithms");
  if (!algs.is_array() || algs.empty()) {
    throw ConfigError("algorithms: expected a non-empty array");
  }
  for (std::size_t i = 0; i < algs.size(); ++i) {
    cfg.algorithms.push_back(ParseAlgorithm(algs[i], "algorithms[" + std::to_string(i) + "]"));
  }

  const bool listed = f.has("seeds");
  const bool counted = f.has("n_seeds");
  if (listed && counted) throw ConfigError("seeds and n_seeds are mutually exclusive");
  if (listed) {
    const json& arr = f.raw("seeds");
    if (!arr.is_array() || arr.empty()) throw ConfigError("seeds: expected a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number_unsigned()) {
        throw ConfigError("seeds[" + std::to_string(i) + "]: expected a non-negative integer");
      }
      cfg.seeds.push_back(arr[i].get<std::uint64_t>());
    }
  } else {
    const auto n = f.unsigned_int("n_seeds").value_or(1);
    if (n == 0) throw ConfigError("n_seeds: must be positive");
    for (std::uint64_t s = 0; s < n; ++s) cfg.seeds.push_back(s);
  }

  cfg.budget = f.unsigned_int("budget").value_or(cfg.budget);
  cfg.out_dir = f.string("out_dir").value_or(cfg.out_dir);
  const auto precision = f.unsigned_int("precision").value_or(4);
  if (precision > 17) throw ConfigError("precision: must be at most 17");
  cfg.precision = static_cast<int>(precision);
  f.finish();

  std::set<std::string> names;
  for (const auto& o : cfg.objectives) {
    if (!names.insert(o.name).second) {
      throw ConfigError("objectives: duplicate name \"" + o.name + "\"");
    }
  }
  names.clear();
  for (const auto& a : cfg.algorithms) {
    if (!names.insert(a.name).second) {
      throw ConfigError("algorithms: duplicate name \"" + a.name + "\"");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError(path + ": cannot open config file");
  std::stringstream buffer;
  buffer << is.rdbuf();
  const std::string text = buffer.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                      ": invalid JSON");
  }
  const fs::path base = fs::path(path).parent_path();
  try {
    return parse_config(doc, base.empty() ? "." : base.string());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void apply(const Overrides& overrides, ExperimentConfig& config) {
  if (overrides.out_dir) config.out_dir = *overrides.out_dir;
  if (overrides.seeds) config.seeds = *overrides.seeds;
  if (overrides.budget) {
    config.budget = *overrides.budget;
    for (auto& a : config.algorithms) a.budget.reset();
  }
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  auto parse_one = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw ConfigError("--seeds: \"" + text + "\" is not a count or a comma-separated list");
    }
    return v;
  };
  std::vector<std::uint64_t> seeds;
  if (text.find(',') == std::string::npos) {
    const std::uint64_t n = parse_one(text);
    if (n == 0) throw ConfigError("--seeds: count must be positive");
    for (std::uint64_t s = 0; s < n; ++s) seeds.push_back(s);
    return seeds;
  }
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    seeds.push_back(parse_one(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return seeds;
}

std::unique_ptr<StepwiseObjective> make_objective(const ObjectiveSpec& spec) {
  const json& p = spec.params;
  try {
    if (spec.type == "quantized_sphere") {
      return std::make_unique<QuantizedSphere>(p.at("p").get<std::size_t>(),
                                               p.at("levels").get<int>(),
                                               p.at("x_star").get<std::vector<double>>());
    }
    if (spec.type == "random_axis_stepwise") {
      return std::make_unique<RandomAxisStepwise>(p.at("p").get<std::size_t>(),
                                                  p.at("cuts").get<std::size_t>(),
                                                  p.at("seed").get<std::uint64_t>());
    }
    if (spec.type == "forest") {
      return std::make_unique<ForestObjective>(load_forest(p.at("path").get<std::string>()));
    }
  } catch (const ForestError& e) {
    std::string msg = "objective \"" + spec.name + "\": " + e.what();
    for (const auto& issue : e.issues()) msg += "\n  " + issue;
    throw LoadError(msg);
  } catch (const std::exception& e) {
    throw LoadError("objective \"" + spec.name + "\": " + e.what());
  }
  throw LoadError("objective \"" + spec.name + "\": unknown type " + spec.type);
}

std::pair<double, double> mean_std(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / n)};
}

std::vector<CellReport> run_experiment(const ExperimentConfig& config, std::ostream& log) {
  if (config.algorithms.empty()) throw ConfigError("no algorithms configured");
  if (config.seeds.empty()) throw ConfigError("no seeds configured");

  std::vector<std::unique_ptr<StepwiseObjective>> objectives;
  for (const auto& spec : config.objectives) objectives.push_back(make_objective(spec));

  for (std::size_t o = 0; o < objectives.size(); ++o) {
    for (const auto& alg : config.algorithms) {
      const RunConfig rc = Resolve(alg, config, objectives[o]->dim());
      Checked("algorithm \"" + alg.name + "\" on objective \"" + config.objectives[o].name + "\"",
              [&] {
                rc.validate(objectives[o]->dim());
                return 0;
              });
    }
  }

  std::vector<CellReport> reports;
  for (std::size_t o = 0; o < objectives.size(); ++o) {
    for (const auto& alg : config.algorithms) {
      CellReport cell;
      cell.algorithm = alg.name;
      cell.objective = config.objectives[o].name;
      std::vector<double> finals;
      std::vector<double> times;
      for (std::uint64_t seed : config.seeds) {
        RunConfig rc = Resolve(alg, config, objectives[o]->dim());
        rc.seed = seed;
        const auto start = std::chrono::steady_clock::now();
        RunResult res = run(*objectives[o], rc);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        SeedOutcome out;
        out.seed = seed;
        out.f_min = res.f_min;
        out.time_s = elapsed;
        out.evaluations = res.evaluations;
        out.trace = std::move(res.trace);
        finals.push_back(out.f_min);
        times.push_back(elapsed);
        cell.runs.push_back(std::move(out));
      }
      std::tie(cell.mean_obj, cell.std_obj) = mean_std(finals);
      std::tie(cell.mean_time_s, cell.std_time_s) = mean_std(times);
      log << cell.algorithm << " on " << cell.objective << ": "
          << Cell(cell.mean_obj, cell.std_obj, config.precision) << " over "
          << cell.runs.size() << " seed(s)\n";
      reports.push_back(std::move(cell));
    }
  }
  return reports;
}

json summary_json(const std::vector<CellReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json runs = json::array();
    for (const auto& s : r.runs) {
      runs.push_back({{"seed", s.seed},
                      {"f_min", s.f_min},
                      {"time_s", s.time_s},
                      {"evaluations", s.evaluations},
                      {"trace", s.trace_file}});
    }
    arr.push_back({{"algorithm", r.algorithm},
                   {"objective", r.objective},
                   {"mean_obj", r.mean_obj},
                   {"std_obj", r.std_obj},
                   {"mean_time_s", r.mean_time_s},
                   {"std_time_s", r.std_time_s},
                   {"n_seeds", r.runs.size()},
                   {"runs", runs}});
  }
  return arr;
}

void write_outputs(const ExperimentConfig& config, std::vector<CellReport>& reports) {
  const fs::path root(config.out_dir);
  for (auto& r : reports) {
    const fs::path rel = fs::path("traces") / SafeName(r.objective) / SafeName(r.algorithm);
    fs::create_directories(root / rel);
    for (auto& s : r.runs) {
      const fs::path file = rel / ("seed_" + std::to_string(s.seed) + ".csv");
      std::string text = "m,f_min\n";
      char line[64];
      for (const auto& t : s.trace) {
        std::snprintf(line, sizeof line, "%zu,%.17g\n", t.m, t.f_min);
        text += line;
      }
      WriteText(root / file, text);
      s.trace_file = file.generic_string();
    }
  }
  WriteText(root / "summary.json", summary_json(reports).dump(2) + "\n");
}

std::string compare_table(const ExperimentConfig& config, const std::vector<CellReport>& reports) {
  const auto best = BestMeans(reports);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"algorithm", "metric"};
  for (const auto& o : config.objectives) header.push_back(o.name);
  rows.push_back(header);
  for (const auto& a : config.algorithms) {
    std::vector<std::string> obj{a.name, "obj"};
    std::vector<std::string> time{"", "time"};
    for (const auto& o : config.objectives) {
      const CellReport* r = Find(reports, a.name, o.name);
      if (!r) {
        obj.emplace_back("-");
        time.emplace_back("-");
        continue;
      }
      std::string cell = Cell(r->mean_obj, r->std_obj, config.precision);
      if (r->mean_obj == best.at(o.name)) cell += " *";
      obj.push_back(cell);
      time.push_back(Cell(r->mean_time_s, r->std_time_s, config.precision));
    }
    rows.push_back(obj);
    rows.push_back(time);
  }

  // Display width: the plus-minus sign is two bytes but one column.
  auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s) w += (c & 0xC0) != 0x80;
    return w;
  };
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], width(row[c]));
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(widths[c] - width(row[c]) + 2, ' ');
    }
    out += line + "\n";
  }
  out += "* lowest mean objective\n";
  return out;
}

std::string compare_csv(const ExperimentConfig& config, const std::vector<CellReport>& reports) {
  const auto best = BestMeans(reports);
  std::string out = "algorithm,metric";
  for (const auto& o : config.objectives) out += "," + o.name;
  out += ",best_marker\n";
  for (const auto& a : config.algorithms) {
    std::string obj = a.name + ",obj";
    std::string time = a.name + ",time";
    std::string marker;
    for (const auto& o : config.objectives) {
      const CellReport* r = Find(reports, a.name, o.name);
      if (!r) {
        obj += ",";
        time += ",";
        continue;
      }
      obj += "," + Cell(r->mean_obj, r->std_obj, config.precision);
      time += "," + Cell(r->mean_time_s, r->std_time_s, config.precision);
      if (r->mean_obj == best.at(o.name)) marker += (marker.empty() ? "" : ";") + o.name;
    }
    out += obj + "," + marker + "\n";
    out += time + ",\n";
  }
  return out;
}

namespace {

template <typename Body>
int Guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LoadError& e) {
    err << "load error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const RunAborted& e) {
    err << "objective failed: " << e.what() << "\n";
    return kExitLoad;
  }
}

}  // namespace

int cmd_run(const std::string& config_path, const Overrides& overrides, std::ostream& out,
            std::ostream& err) {
  return Guarded(err, [&] {
    ExperimentConfig cfg = load_config(config_path);
    apply(overrides, cfg);
    auto reports = run_experiment(cfg, out);
    write_outputs(cfg, reports);
    out << "wrote " << (fs::path(cfg.out_dir) / "summary.json").string() << "\n";
    return kExitOk;
  });
}

int cmd_compare(const std::string& config_path, const Overrides& overrides, std::ostream& out,
                std::ostream& err) {
  return Guarded(err, [&] {
    ExperimentConfig cfg = load_config(config_path);
    apply(overrides, cfg);
    if (cfg.algorithms.size() < 2) {
      throw ConfigError("compare needs at least two algorithms, got " +
                        std::to_string(cfg.algorithms.size()));
    }
    std::ostringstream log;
    auto reports = run_experiment(cfg, log);
    write_outputs(cfg, reports);
    const std::string table = compare_table(cfg, reports);
    WriteText(fs::path(cfg.out_dir) / "compare.txt", table);
    WriteText(fs::path(cfg.out_dir) / "compare.csv", compare_csv(cfg, reports));
    out << table;
    return kExitOk;
  });
}

int cmd_validate_forest(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    err << path << ": cannot open file\n";
    return kExitInvalidForest;
  }
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    err << path << ": invalid JSON at byte " << e.byte << "\n";
    return kExitInvalidForest;
  }
  const auto issues = validate_forest_json(doc);
  if (!issues.empty()) {
    err << path << ": " << issues.size() << " problem(s)\n";
    for (const auto& issue : issues) err << "  " << issue << "\n";
    return kExitInvalidForest;
  }
  const ForestObjective objective(forest_from_json(doc));
  const Forest& forest = objective.forest();
  std::size_t nodes = 0;
  for (const auto& t : forest.trees) nodes += t.nodes.size();
  out << "format: " << kForestFormat << "\n";
  out << "p: " << forest.p << "\n";
  out << "trees: " << forest.trees.size() << " (" << nodes << " nodes)\n";
  out << "importance (" << (forest.importance.empty() ? "split counts" : "from file") << "):";
  const auto w = objective.importance();
  for (std::size_t i = 0; i < w.size(); ++i) out << (i ? ", " : " ") << FormatFixed(w[i], 4);
  out << "\n";
  return kExitOk;
}

}  // namespace stepdirect::bench
