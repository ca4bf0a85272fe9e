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

#include "core/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/metrics.hpp"
#include "core/rng.hpp"
#include "core/targets.hpp"

namespace qrlc {

namespace fs = std::filesystem;

std::string TrainOutput::summary_json() const {
  nlohmann::json j = {{"model_files", model_files}, {"final_model", final_model},
                      {"log_file", log_file},       {"fingerprint", std::to_string(fingerprint)},
                      {"loops", loops},             {"final_loss", final_loss}};
  return j.dump(2) + "\n";
}

TrainOutput run_training(const RunConfig& cfg, const std::string& out_dir) {
  ActionSpace space = cfg.build_space();

  TrainingSet ts;
  bool have_shards =
      !cfg.dataset_dir.empty() && fs::exists(cfg.dataset_dir + "/loop_000.qrlw");
  if (have_shards) {
    ts = load_shards(cfg.dataset_dir, space, cfg.gen);
  } else {
    ts = generate_training_set(space, cfg.gen);
    if (!cfg.dataset_dir.empty()) save_shards(ts, cfg.dataset_dir);
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(ErrCode::resource, "train: cannot create output dir " + out_dir);

  TrainOutput out;
  out.fingerprint = space.fingerprint();

  TrainResult result =
      train(space, ts, cfg.train_cfg, [&](const NetworkParams& p, int loop) {
        char name[32];
        std::snprintf(name, sizeof(name), "model_loop_%03d.qrlc", loop);
        std::string path = out_dir + "/" + name;
        save_model(p, path);
        out.model_files.push_back(path);
      });

  out.final_model = out_dir + "/model.qrlc";
  save_model(result.params, out.final_model);

  out.log_file = out_dir + "/training_log.csv";
  std::ofstream log(out.log_file);
  if (!log) fail(ErrCode::resource, "train: cannot write " + out.log_file);
  log << "loop,epoch,loss,regime\n";
  for (const TrainLogEntry& e : result.log)
    log << e.loop << ',' << e.epoch << ',' << e.loss << ','
        << (e.bootstrap ? "bootstrap" : "exact") << '\n';

  save_config(cfg, out_dir + "/training_config.ini");  // run provenance

  out.loops = result.params.loop_index;
  out.final_loss = result.log.empty() ? 0.0 : result.log.back().loss;
  return out;
}

CompileResult run_compile(const RunConfig& cfg,
                          const std::vector<const NetworkParams*>& models,
                          const std::string& target_spec, bool variational) {
  if (models.empty()) fail(ErrCode::parse, "compile: no models given");
  ActionSpace space = cfg.build_space();
  CMat target = resolve_target(target_spec, cfg.num_qubits, &space);

  std::vector<ModelQ> sources;
  sources.reserve(models.size());
  for (const NetworkParams* m : models) {
    if (m->fingerprint != space.fingerprint())
      fail(ErrCode::fingerprint, "compile: model was trained for action space " +
                                     std::to_string(m->fingerprint) +
                                     ", configured space is " +
                                     std::to_string(space.fingerprint()));
    sources.emplace_back(*m);
  }
  std::vector<const QSource*> qs;
  std::vector<const ActionSpace*> spaces;
  for (const ModelQ& s : sources) {
    qs.push_back(&s);
    spaces.push_back(&space);
  }

  CompileResult result = multi_dqn_search(target, qs, spaces, cfg.search);
  result.circuit.target_spec = target_spec;
  result.circuit.seed = cfg.search.seed;

  if (variational) refine_circuit(cfg, result.circuit, target);
  return result;
}

CompileResult run_template_compile(const RunConfig& cfg, const std::string& template_spec,
                                   const std::string& target_spec) {
  ActionSpace space = cfg.build_space();
  CMat target = resolve_target(target_spec, cfg.num_qubits, &space);

  Rng rng(cfg.var.seed ^ 0x2ffd72dbd01adfb7ULL);
  CircuitDoc doc;
  doc.num_qubits = cfg.num_qubits;
  std::istringstream in(template_spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    size_t at = item.find('@');
    if (at == std::string::npos)
      fail(ErrCode::parse, "template: item '" + item + "' needs NAME@qubits");
    GateOp g;
    g.name = item.substr(0, at);
    std::string placement = item.substr(at + 1);
    size_t dash = placement.find('-');
    try {
      if (dash == std::string::npos) {
        g.qubits = {std::stoi(placement)};
      } else {
        g.qubits = {std::stoi(placement.substr(0, dash)),
                    std::stoi(placement.substr(dash + 1))};
      }
    } catch (const std::exception&) {
      fail(ErrCode::parse, "template: bad qubit placement in '" + item + "'");
    }
    for (int q : g.qubits)
      if (q < 1 || q > cfg.num_qubits)
        fail(ErrCode::parse, "template: qubit out of range in '" + item + "'");
    if (g.name == "u3") {
      constexpr double pi = 3.14159265358979323846;
      for (int k = 0; k < 3; ++k) g.angles.push_back(rng.uniform(-pi, pi));
    } else {
      gate_matrix(g.name);  // validate eagerly
    }
    doc.gates.push_back(std::move(g));
  }
  if (doc.gates.empty()) fail(ErrCode::parse, "template: no gates");

  auto t0 = std::chrono::steady_clock::now();
  Ansatz ansatz = Ansatz::from_circuit(doc);
  VarResult vr = optimize(ansatz, target, cfg.var);

  CompileResult result;
  CircuitDoc& out = result.circuit;
  out.num_qubits = cfg.num_qubits;
  out.gates = ansatz.to_gates(vr.best_params);
  result.f1 = fidelity_f1(circuit_unitary(out.gates, out.num_qubits), target);
  std::tie(result.n1, result.n2) = gate_counts(out.gates);
  result.status = 1.0 - result.f1 < cfg.search.epsilon ? CompileStatus::converged
                                                       : CompileStatus::budget_exhausted;
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  out.f1 = result.f1;
  out.n1 = result.n1;
  out.n2 = result.n2;
  out.elapsed_ms = result.elapsed_ms;
  out.status = result.status;
  out.search_mode = "template";
  out.seed = cfg.var.seed;
  out.target_spec = target_spec;
  return result;
}

void refine_circuit(const RunConfig& cfg, CircuitDoc& doc, const CMat& target) {
  Ansatz ansatz = Ansatz::from_circuit(doc);
  VarResult vr = optimize(ansatz, target, cfg.var);
  RefinedSection refined;
  refined.gates = ansatz.to_gates(vr.best_params);
  refined.f1_initial = vr.init_f1;
  refined.f1_refined = vr.best_f1;
  doc.refined = std::move(refined);
}

std::string EvalOutput::to_json() const {
  nlohmann::json j;
  j["stored_f1"] = stored_f1;
  j["recomputed_f1"] = recomputed_f1;
  j["f1_consistent"] = f1_consistent;
  if (has_refined) {
    j["refined"] = {{"stored_f1", refined_stored_f1},
                    {"recomputed_f1", refined_recomputed_f1},
                    {"consistent", refined_consistent}};
  }
  if (!tv.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TvRow& r : tv)
      rows.push_back({{"input", r.input},
                      {"tv_circuit_ideal", r.tv_circuit_ideal},
                      {"tv_ideal_uniform", r.tv_ideal_uniform}});
    j["tv"] = rows;
  }
  if (oracle_checked) {
    j["oracle"] = {{"distance", oracle_distance},
                   {"circuit_length", circuit_length},
                   {"optimal", oracle_optimal}};
  }
  j["ok"] = ok();
  return j.dump(2) + "\n";
}

EvalOutput run_eval(const RunConfig& cfg, const CircuitDoc& doc,
                    const std::string& target_override, const std::string& tv_inputs_csv,
                    const ValueTable* oracle) {
  std::string spec = target_override.empty() ? doc.target_spec : target_override;
  if (spec.empty())
    fail(ErrCode::parse, "eval: circuit file carries no target spec; pass one explicitly");

  ActionSpace space = cfg.build_space();
  if (doc.num_qubits != cfg.num_qubits)
    fail(ErrCode::parse, "eval: circuit register size does not match configuration");
  CMat target = resolve_target(spec, doc.num_qubits, &space);

  EvalOutput out;
  out.stored_f1 = doc.f1;
  out.recomputed_f1 = fidelity_f1(circuit_unitary(doc.gates, doc.num_qubits), target);
  out.f1_consistent = std::abs(out.stored_f1 - out.recomputed_f1) <= 1e-8;

  if (doc.refined) {
    out.has_refined = true;
    out.refined_stored_f1 = doc.refined->f1_refined;
    out.refined_recomputed_f1 =
        fidelity_f1(circuit_unitary(doc.refined->gates, doc.num_qubits), target);
    out.refined_consistent =
        std::abs(out.refined_stored_f1 - out.refined_recomputed_f1) <= 1e-8;
  }

  if (!tv_inputs_csv.empty()) {
    int dim = 1 << doc.num_qubits;
    std::vector<double> uniform(dim, 1.0 / dim);
    std::istringstream in(tv_inputs_csv);
    std::string token;
    while (std::getline(in, token, ',')) {
      if (token.empty()) continue;
      StateVec input = resolve_input_state(token, doc.num_qubits);
      std::vector<double> ideal(dim);
      StateVec ideal_state = apply(target, input);
      for (int i = 0; i < dim; ++i) ideal[i] = std::norm(ideal_state.amps[i]);
      const std::vector<GateOp>& gates = doc.refined ? doc.refined->gates : doc.gates;
      std::vector<double> circuit = output_distribution(gates, input, doc.num_qubits);
      out.tv.push_back({token, tv_distance(circuit, ideal), tv_distance(ideal, uniform)});
    }
  }

  if (oracle) {
    if (oracle->fingerprint() != space.fingerprint())
      fail(ErrCode::fingerprint, "eval: oracle table does not match the configured space");
    out.oracle_checked = true;
    std::optional<int> dist = oracle->distance(target);
    out.oracle_distance = dist.value_or(-1);
    out.circuit_length = doc.n1 + doc.n2;
    out.oracle_optimal = dist && *dist == out.circuit_length;
  }
  return out;
}

}  // namespace qrlc
