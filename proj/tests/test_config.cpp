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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "core/config.hpp"
#include "core/errors.hpp"

using namespace qrlc;

TEST_CASE("presets") {
  RunConfig desk = config_preset("desk");
  CHECK(desk.build_space().size() == 6);
  CHECK(desk.gen.loops == 8);
  CHECK(desk.train_cfg.delta == 0.02);

  RunConfig q2 = config_preset("two-qubit-paper");
  CHECK(q2.build_space().size() == 13);
  CHECK(q2.gen.loops == 45);
  CHECK(q2.train_cfg.shape.hidden1 == 6000);
  CHECK(q2.search.depth == 200);

  RunConfig q3 = config_preset("three-qubit-paper");
  CHECK(q3.build_space().size() == 20);
  CHECK(q3.gen.loops == 44);
  CHECK(q3.search.depth == 500);

  CHECK_THROWS_AS(config_preset("nope"), Error);
}

TEST_CASE("named gate sets resolve") {
  RunConfig cfg = config_preset("desk");
  apply_override(cfg, "gateset.num_qubits", "3");
  apply_override(cfg, "gateset.gates", "G33");
  apply_override(cfg, "topology.edges", "full");
  CHECK(cfg.build_space().size() == 24);

  apply_override(cfg, "gateset.gates", "G34");
  apply_override(cfg, "topology.edges", "none");
  CHECK(cfg.build_space().size() == 18);
}

TEST_CASE("overrides and validation") {
  RunConfig cfg = config_preset("desk");
  apply_override(cfg, "train.loops", "12");
  CHECK(cfg.gen.loops == 12);
  apply_override(cfg, "search.mode", "greedy");
  CHECK(cfg.search.mode == SearchMode::greedy);
  apply_override(cfg, "train.seed", "77");
  CHECK(cfg.gen.seed == 77);
  CHECK(cfg.var.seed == 77);

  CHECK_THROWS_AS(apply_override(cfg, "train.loops", "abc"), Error);
  CHECK_THROWS_AS(apply_override(cfg, "bogus.key", "1"), Error);
  CHECK_THROWS_AS(apply_override(cfg, "gateset.num_qubits", "4"), Error);
  CHECK_THROWS_AS(apply_override(cfg, "search.mode", "sideways"), Error);
}

TEST_CASE("config file round trip") {
  RunConfig cfg = config_preset("two-qubit-paper");
  apply_override(cfg, "train.loops", "7");
  apply_override(cfg, "search.frontier_width", "32");
  apply_override(cfg, "paths.model_dir", "/tmp/models");

  std::string path = (std::filesystem::temp_directory_path() / "qrlc_cfg_test.ini").string();
  save_config(cfg, path);
  RunConfig back = load_config(path);

  for (const char* key :
       {"gateset.num_qubits", "gateset.gates", "topology.edges", "train.loops",
        "train.exhaustive_horizon", "train.budget", "train.lr", "train.delta",
        "train.minibatch", "train.hidden1", "train.blocks", "search.mode", "search.depth",
        "search.epsilon", "search.frontier_width", "variational.steps",
        "variational.restarts", "paths.model_dir"})
    CHECK(config_get(back, key) == config_get(cfg, key));
  std::filesystem::remove(path);
}

TEST_CASE("config file parsing") {
  std::string path = (std::filesystem::temp_directory_path() / "qrlc_cfg_parse.ini").string();
  {
    std::ofstream out(path);
    out << "# comment\n[general]\npreset = desk\n\n[train]\nloops = 3\n"
        << "[search]\ndepth = 25\n";
  }
  RunConfig cfg = load_config(path);
  CHECK(cfg.gen.loops == 3);
  CHECK(cfg.search.depth == 25);
  CHECK(cfg.build_space().size() == 6);  // desk base survives other overrides

  {
    std::ofstream out(path);
    out << "[train]\nloops\n";
  }
  CHECK_THROWS_AS(load_config(path), Error);
  CHECK_THROWS_AS(load_config("/nonexistent/qrlc.ini"), Error);
  std::filesystem::remove(path);
}

TEST_CASE("circuit document round trip") {
  CircuitDoc doc;
  doc.num_qubits = 2;
  doc.gates = {GateOp{"X/2", {1}, {}}, GateOp{"CZ", {1, 2}, {}},
               GateOp{"u3", {2}, {0.1, -0.2, 0.3}}};
  doc.f1 = 0.987654321;
  doc.n1 = 2;
  doc.n2 = 1;
  doc.elapsed_ms = 12.5;
  doc.status = CompileStatus::budget_exhausted;
  doc.model_fingerprint = 0xdeadbeefcafef00dULL;
  doc.search_mode = "frontier";
  doc.seed = 7;
  doc.target_spec = "rzz:1.5708";
  doc.nodes_expanded = 321;
  RefinedSection refined;
  refined.gates = {GateOp{"u3", {1}, {0.5, 0.6, 0.7}}, GateOp{"CZ", {1, 2}, {}}};
  refined.f1_initial = 0.9;
  refined.f1_refined = 0.9999;
  doc.refined = refined;

  std::string path = (std::filesystem::temp_directory_path() / "qrlc_circ_test.json").string();
  write_circuit(doc, path);
  CircuitDoc back = read_circuit(path);

  CHECK(back.num_qubits == doc.num_qubits);
  REQUIRE(back.gates.size() == doc.gates.size());
  for (size_t i = 0; i < doc.gates.size(); ++i) {
    CHECK(back.gates[i].name == doc.gates[i].name);
    CHECK(back.gates[i].qubits == doc.gates[i].qubits);
    CHECK(back.gates[i].angles == doc.gates[i].angles);
  }
  CHECK(back.f1 == doc.f1);
  CHECK(back.status == doc.status);
  CHECK(back.model_fingerprint == doc.model_fingerprint);
  CHECK(back.target_spec == doc.target_spec);
  CHECK(back.nodes_expanded == doc.nodes_expanded);
  REQUIRE(back.refined.has_value());
  CHECK(back.refined->f1_refined == refined.f1_refined);
  CHECK(back.refined->gates.size() == 2);

  // Malformed content is rejected with a parse error.
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(read_circuit(path), Error);
  {
    std::ofstream out(path);
    out << "{\"format_version\": 1}";
  }
  CHECK_THROWS_AS(read_circuit(path), Error);
  std::filesystem::remove(path);
}
