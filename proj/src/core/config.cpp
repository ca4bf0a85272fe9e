// Copyright 2025-2026 The qrlc developers
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

#include "core/config.hpp"

#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace qrlc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string named_gate_set(const std::string& name) {
  if (name == "G21" || name == "G31") return "X/2 -X/2 Y/2 -Y/2 T Tdg CZ";
  if (name == "G22") return "X/6 -X/6 Y/6 -Y/6 Z/6 -Z/6";
  if (name == "G23" || name == "G34") return "X/128 -X/128 Y/128 -Y/128 Z/128 -Z/128";
  if (name == "G32") return "V1 V1dg V2 V2dg V3 V3dg CZ";
  if (name == "G33") return "V1 V1dg V2 V2dg V3 V3dg H CZ";
  return "";
}

long to_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long out = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    fail(ErrCode::parse, "config: bad integer for " + key + ": '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    fail(ErrCode::parse, "config: bad number for " + key + ": '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(ErrCode::parse, "config: bad boolean for " + key + ": '" + v + "'");
}

}  // namespace

Topology RunConfig::build_topology() const {
  if (topology_text == "none") return Topology::none(num_qubits);
  if (topology_text == "chain") return Topology::chain(num_qubits);
  if (topology_text == "full") return Topology::full(num_qubits);
  Topology t{num_qubits, {}};
  std::istringstream in(topology_text);
  std::string tok;
  while (in >> tok) {
    size_t dash = tok.find('-');
    if (dash == std::string::npos)
      fail(ErrCode::parse, "config: bad edge '" + tok + "' (want a-b)");
    t.edges.emplace_back(static_cast<int>(to_long("topology.edges", tok.substr(0, dash))),
                         static_cast<int>(to_long("topology.edges", tok.substr(dash + 1))));
  }
  t.validate();
  return t;
}

ActionSpace RunConfig::build_space() const {
  return ActionSpace::build(parse_gate_list(gates_text), build_topology());
}

RunConfig config_preset(const std::string& name) {
  RunConfig cfg;
  cfg.preset_name = name;
  if (name == "desk") {
    cfg.num_qubits = 1;
    cfg.gates_text = "X/2 -X/2 Y/2 -Y/2 T Tdg";
    cfg.topology_text = "none";
    cfg.gen = GenConfig{8, 5, 2000, 1, 0.002, size_t(4) << 30};
    cfg.train_cfg.lr = 1e-3;
    cfg.train_cfg.delta = 0.02;
    cfg.train_cfg.minibatch = 1024;
    cfg.train_cfg.epoch_factor = 100;
    cfg.train_cfg.exact_horizon = cfg.gen.exhaustive_horizon;
    cfg.train_cfg.seed = 1;
    cfg.train_cfg.shape = NetworkShape{0, 512, 256, 2, 0};
    cfg.search = SearchConfig{200, 1e-4, 128, 600.0, SearchMode::frontier, 1};
    cfg.var = VarConfig{500, 0.01, 5, 0.1, 1, false};
    return cfg;
  }
  if (name == "two-qubit-paper") {
    cfg.num_qubits = 2;
    cfg.gates_text = named_gate_set("G21");
    cfg.topology_text = "full";
    cfg.gen = GenConfig{45, 3, 200000, 1, 0.002, size_t(4) << 30};
    cfg.train_cfg.lr = 1e-3;
    cfg.train_cfg.delta = 0.02;
    cfg.train_cfg.minibatch = 1024;
    cfg.train_cfg.epoch_factor = 100;
    cfg.train_cfg.exact_horizon = 3;
    cfg.train_cfg.seed = 1;
    cfg.train_cfg.shape = NetworkShape{0, 6000, 2000, 6, 0};
    cfg.search = SearchConfig{200, 1e-4, 128, 600.0, SearchMode::frontier, 1};
    cfg.var = VarConfig{500, 0.01, 5, 0.1, 1, false};
    return cfg;
  }
  if (name == "three-qubit-paper") {
    cfg.num_qubits = 3;
    cfg.gates_text = named_gate_set("G31");
    cfg.topology_text = "chain";
    cfg.gen = GenConfig{44, 3, 200000, 1, 0.002, size_t(4) << 30};
    cfg.train_cfg.lr = 1e-3;
    cfg.train_cfg.delta = 0.02;
    cfg.train_cfg.minibatch = 1024;
    cfg.train_cfg.epoch_factor = 100;
    cfg.train_cfg.exact_horizon = 3;
    cfg.train_cfg.seed = 1;
    cfg.train_cfg.shape = NetworkShape{0, 8000, 3000, 6, 0};
    cfg.search = SearchConfig{500, 1e-4, 128, 1200.0, SearchMode::frontier, 1};
    cfg.var = VarConfig{500, 0.01, 5, 0.1, 1, false};
    return cfg;
  }
  fail(ErrCode::parse, "unknown preset '" + name + "'");
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "general.preset") {
    cfg = config_preset(v);
    return;
  }
  if (key == "gateset.num_qubits") {
    cfg.num_qubits = static_cast<int>(to_long(key, v));
    if (cfg.num_qubits < 1 || cfg.num_qubits > 3)
      fail(ErrCode::parse, "config: num_qubits must be 1..3");
    return;
  }
  if (key == "gateset.gates") {
    std::string named = named_gate_set(v);
    cfg.gates_text = named.empty() ? v : named;
    parse_gate_list(cfg.gates_text);  // validate eagerly
    return;
  }
  if (key == "topology.edges") {
    cfg.topology_text = v;
    return;
  }
  if (key == "train.loops") { cfg.gen.loops = static_cast<int>(to_long(key, v)); return; }
  if (key == "train.exhaustive_horizon") {
    cfg.gen.exhaustive_horizon = static_cast<int>(to_long(key, v));
    cfg.train_cfg.exact_horizon = cfg.gen.exhaustive_horizon;
    return;
  }
  if (key == "train.budget") { cfg.gen.budget = static_cast<int>(to_long(key, v)); return; }
  if (key == "train.perturbation") { cfg.gen.perturbation = to_double(key, v); return; }
  if (key == "train.lr") { cfg.train_cfg.lr = to_double(key, v); return; }
  if (key == "train.delta") { cfg.train_cfg.delta = to_double(key, v); return; }
  if (key == "train.minibatch") {
    cfg.train_cfg.minibatch = static_cast<int>(to_long(key, v));
    return;
  }
  if (key == "train.epoch_factor") {
    cfg.train_cfg.epoch_factor = static_cast<int>(to_long(key, v));
    return;
  }
  if (key == "train.hidden1") {
    cfg.train_cfg.shape.hidden1 = static_cast<int>(to_long(key, v));
    return;
  }
  if (key == "train.hidden2") {
    cfg.train_cfg.shape.hidden2 = static_cast<int>(to_long(key, v));
    return;
  }
  if (key == "train.blocks") {
    cfg.train_cfg.shape.blocks = static_cast<int>(to_long(key, v));
    return;
  }
  if (key == "train.seed") {
    cfg.train_cfg.seed = static_cast<uint64_t>(to_long(key, v));
    cfg.gen.seed = cfg.train_cfg.seed;
    cfg.search.seed = cfg.train_cfg.seed;
    cfg.var.seed = cfg.train_cfg.seed;
    return;
  }
  if (key == "search.mode") {
    if (v == "greedy") cfg.search.mode = SearchMode::greedy;
    else if (v == "frontier") cfg.search.mode = SearchMode::frontier;
    else fail(ErrCode::parse, "config: search.mode must be greedy or frontier");
    return;
  }
  if (key == "search.depth") { cfg.search.depth = static_cast<int>(to_long(key, v)); return; }
  if (key == "search.epsilon") { cfg.search.epsilon = to_double(key, v); return; }
  if (key == "search.frontier_width") {
    cfg.search.frontier_width = static_cast<int>(to_long(key, v));
    return;
  }
  if (key == "search.time_budget_sec") {
    cfg.search.time_budget_sec = to_double(key, v);
    return;
  }
  if (key == "variational.steps") { cfg.var.steps = static_cast<int>(to_long(key, v)); return; }
  if (key == "variational.lr") { cfg.var.lr = to_double(key, v); return; }
  if (key == "variational.restarts") {
    cfg.var.restarts = static_cast<int>(to_long(key, v));
    return;
  }
  if (key == "variational.jitter") { cfg.var.jitter = to_double(key, v); return; }
  if (key == "variational.phase_invariant") {
    cfg.var.phase_invariant = to_bool(key, v);
    return;
  }
  if (key == "paths.model_dir") { cfg.model_dir = v; return; }
  if (key == "paths.dataset_dir") { cfg.dataset_dir = v; return; }
  if (key == "paths.output") { cfg.output = v; return; }
  fail(ErrCode::parse, "config: unknown key '" + key + "'");
}

std::string config_get(const RunConfig& cfg, const std::string& key) {
  auto num = [](auto v) { return std::to_string(v); };
  auto dbl = [](double v) {
    std::ostringstream s;
    s.precision(12);
    s << v;
    return s.str();
  };
  if (key == "general.preset") return cfg.preset_name;
  if (key == "gateset.num_qubits") return num(cfg.num_qubits);
  if (key == "gateset.gates") return cfg.gates_text;
  if (key == "topology.edges") return cfg.topology_text;
  if (key == "train.loops") return num(cfg.gen.loops);
  if (key == "train.exhaustive_horizon") return num(cfg.gen.exhaustive_horizon);
  if (key == "train.budget") return num(cfg.gen.budget);
  if (key == "train.perturbation") return dbl(cfg.gen.perturbation);
  if (key == "train.lr") return dbl(cfg.train_cfg.lr);
  if (key == "train.delta") return dbl(cfg.train_cfg.delta);
  if (key == "train.minibatch") return num(cfg.train_cfg.minibatch);
  if (key == "train.epoch_factor") return num(cfg.train_cfg.epoch_factor);
  if (key == "train.hidden1") return num(cfg.train_cfg.shape.hidden1);
  if (key == "train.hidden2") return num(cfg.train_cfg.shape.hidden2);
  if (key == "train.blocks") return num(cfg.train_cfg.shape.blocks);
  if (key == "train.seed") return num(cfg.train_cfg.seed);
  if (key == "search.mode")
    return cfg.search.mode == SearchMode::greedy ? "greedy" : "frontier";
  if (key == "search.depth") return num(cfg.search.depth);
  if (key == "search.epsilon") return dbl(cfg.search.epsilon);
  if (key == "search.frontier_width") return num(cfg.search.frontier_width);
  if (key == "search.time_budget_sec") return dbl(cfg.search.time_budget_sec);
  if (key == "variational.steps") return num(cfg.var.steps);
  if (key == "variational.lr") return dbl(cfg.var.lr);
  if (key == "variational.restarts") return num(cfg.var.restarts);
  if (key == "variational.jitter") return dbl(cfg.var.jitter);
  if (key == "variational.phase_invariant") return cfg.var.phase_invariant ? "true" : "false";
  if (key == "paths.model_dir") return cfg.model_dir;
  if (key == "paths.dataset_dir") return cfg.dataset_dir;
  if (key == "paths.output") return cfg.output;
  fail(ErrCode::parse, "config: unknown key '" + key + "'");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrCode::parse, "config: cannot open " + path);

  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line, section = "general";
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[' && s.back() == ']') {
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      fail(ErrCode::parse,
           "config: line " + std::to_string(lineno) + " is not key = value");
    pairs.emplace_back(section + "." + trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }

  RunConfig cfg;
  // A preset line rebases everything, so apply it first.
  for (const auto& [k, v] : pairs)
    if (k == "general.preset") cfg = config_preset(v);
  for (const auto& [k, v] : pairs)
    if (k != "general.preset") apply_override(cfg, k, v);
  return cfg;
}

void save_config(const RunConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrCode::resource, "config: cannot write " + path);
  out << "[general]\npreset = " << cfg.preset_name << "\n\n";
  out << "[gateset]\nnum_qubits = " << cfg.num_qubits << "\ngates = " << cfg.gates_text
      << "\n\n";
  out << "[topology]\nedges = " << cfg.topology_text << "\n\n";
  out << "[train]\n";
  for (const char* k : {"loops", "exhaustive_horizon", "budget", "perturbation", "lr",
                        "delta", "minibatch", "epoch_factor", "hidden1", "hidden2",
                        "blocks", "seed"})
    out << k << " = " << config_get(cfg, std::string("train.") + k) << "\n";
  out << "\n[search]\n";
  for (const char* k : {"mode", "depth", "epsilon", "frontier_width", "time_budget_sec"})
    out << k << " = " << config_get(cfg, std::string("search.") + k) << "\n";
  out << "\n[variational]\n";
  for (const char* k : {"steps", "lr", "restarts", "jitter", "phase_invariant"})
    out << k << " = " << config_get(cfg, std::string("variational.") + k) << "\n";
  if (!cfg.model_dir.empty() || !cfg.dataset_dir.empty() || !cfg.output.empty()) {
    out << "\n[paths]\n";
    if (!cfg.model_dir.empty()) out << "model_dir = " << cfg.model_dir << "\n";
    if (!cfg.dataset_dir.empty()) out << "dataset_dir = " << cfg.dataset_dir << "\n";
    if (!cfg.output.empty()) out << "output = " << cfg.output << "\n";
  }
}

}  // namespace qrlc
