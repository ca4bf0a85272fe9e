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

#include "core/search.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "core/dedup.hpp"
#include "core/errors.hpp"
#include "core/metrics.hpp"

namespace qrlc {

RMat ModelQ::q_values(const std::vector<const CMat*>& residuals) const {
  RMat x(static_cast<int>(residuals.size()), params_.shape.input);
  for (size_t i = 0; i < residuals.size(); ++i) {
    std::vector<double> f = encode_percept(*residuals[i]);
    if (static_cast<int>(f.size()) != params_.shape.input)
      fail(ErrCode::generic, "model expects a different register size");
    std::copy(f.begin(), f.end(), x.row(static_cast<int>(i)));
  }
  return forward_eval(params_, x);
}

RMat OracleQ::q_values(const std::vector<const CMat*>& residuals) const {
  RMat q(static_cast<int>(residuals.size()), space_.size());
  for (size_t i = 0; i < residuals.size(); ++i) {
    for (int j = 0; j < space_.size(); ++j) {
      CMat child = space_.action(j).matrix * (*residuals[i]);
      std::optional<int> dist = table_.distance(child);
      q.at(static_cast<int>(i), j) =
          dist ? -static_cast<double>(*dist) : -static_cast<double>(table_.max_depth() + 1);
    }
  }
  return q;
}

double eval_f(const SearchNode& node, int action, const QSource& q) {
  RMat qv = q.q_values({&node.residual});
  return node.g + qv.at(0, action);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_pairing(const QSource& q, const ActionSpace& space, const CMat& target) {
  if (q.fingerprint() != space.fingerprint())
    fail(ErrCode::fingerprint, "search: value source was built for a different action space");
  if (q.num_actions() != space.size())
    fail(ErrCode::fingerprint, "search: action count mismatch");
  if (target.dim() != space.dim())
    fail(ErrCode::generic, "search: target dimension does not match action space");
}

// Chosen actions are replayed in reverse as their inverses: the residual walk
// computes A_k ... A_1 U ~ I, so the circuit (first-applied first) reads
// [inv(A_k), ..., inv(A_1)] and multiplies out to A_1^dag ... A_k^dag ~ U.
std::vector<GateOp> emit_gates(const std::vector<uint16_t>& chosen, const ActionSpace& space) {
  std::vector<GateOp> gates;
  gates.reserve(chosen.size());
  for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
    const Action& inv = space.action(space.inverse_index(*it));
    GateOp g;
    g.name = inv.gate.name;
    g.qubits = inv.qubits;
    if (inv.gate.angle) g.angles = {*inv.gate.angle};
    gates.push_back(std::move(g));
  }
  return gates;
}

CompileResult assemble(const CMat& target, const std::vector<uint16_t>& chosen,
                       const ActionSpace& space, const SearchConfig& cfg,
                       CompileStatus status, long nodes, double elapsed_ms,
                       const char* mode, uint64_t fingerprint) {
  CompileResult r;
  r.chosen_actions = chosen;
  r.status = status;
  r.nodes_expanded = nodes;
  r.elapsed_ms = elapsed_ms;

  CircuitDoc& doc = r.circuit;
  doc.num_qubits = space.num_qubits();
  doc.gates = emit_gates(chosen, space);
  r.f1 = fidelity_f1(circuit_unitary(doc.gates, doc.num_qubits), target);
  std::tie(r.n1, r.n2) = gate_counts(doc.gates);
  doc.f1 = r.f1;
  doc.n1 = r.n1;
  doc.n2 = r.n2;
  doc.elapsed_ms = elapsed_ms;
  doc.status = status;
  doc.search_mode = mode;
  doc.model_fingerprint = fingerprint;
  doc.seed = cfg.seed;
  doc.nodes_expanded = nodes;
  return r;
}

int argmax_row(const RMat& q, int row) {
  const double* r = q.row(row);
  int best = 0;
  for (int j = 1; j < q.cols; ++j)
    if (r[j] > r[best]) best = j;
  return best;
}

}  // namespace

CompileResult greedy_rollout(const CMat& target, const QSource& q, const ActionSpace& space,
                             const SearchConfig& cfg) {
  check_pairing(q, space, target);
  auto t0 = Clock::now();

  CMat residual = canonical_phase(target);
  double best_infid = identity_infidelity(residual);
  size_t best_len = 0;
  std::vector<uint16_t> chosen;
  long nodes = 0;
  bool converged = best_infid < cfg.epsilon;

  while (!converged && static_cast<int>(chosen.size()) < cfg.depth) {
    if (ms_since(t0) > cfg.time_budget_sec * 1000.0) break;
    RMat qv = q.q_values({&residual});
    ++nodes;
    int a = argmax_row(qv, 0);
    residual = canonical_phase(space.action(a).matrix * residual);
    chosen.push_back(static_cast<uint16_t>(a));
    double infid = identity_infidelity(residual);
    if (infid < best_infid) {
      best_infid = infid;
      best_len = chosen.size();
    }
    if (infid < cfg.epsilon) converged = true;
  }

  if (!converged) chosen.resize(best_len);  // best prefix
  return assemble(target, chosen, space, cfg,
                  converged ? CompileStatus::converged : CompileStatus::budget_exhausted,
                  nodes, ms_since(t0), "greedy", q.fingerprint());
}

namespace {

struct FrontierNode {
  CMat residual;
  int g = 0;
  std::vector<uint16_t> path;
  double infid = 0.0;
  int best_action = 0;
  double best_f = 0.0;
};

void score_nodes(std::vector<FrontierNode>& nodes, const QSource& q) {
  std::vector<const CMat*> residuals;
  residuals.reserve(nodes.size());
  for (const FrontierNode& n : nodes) residuals.push_back(&n.residual);
  RMat qv = q.q_values(residuals);
  for (size_t i = 0; i < nodes.size(); ++i) {
    int a = argmax_row(qv, static_cast<int>(i));
    nodes[i].best_action = a;
    nodes[i].best_f = nodes[i].g + qv.at(static_cast<int>(i), a);
  }
}

}  // namespace

CompileResult frontier_search(const CMat& target, const QSource& q, const ActionSpace& space,
                              const SearchConfig& cfg) {
  check_pairing(q, space, target);
  if (cfg.frontier_width < 1) fail(ErrCode::parse, "search: frontier width must be >= 1");
  auto t0 = Clock::now();

  FrontierNode root;
  root.residual = canonical_phase(target);
  root.infid = identity_infidelity(root.residual);

  double best_infid = root.infid;
  std::vector<uint16_t> best_path;
  long nodes_expanded = 0;

  if (root.infid < cfg.epsilon)
    return assemble(target, {}, space, cfg, CompileStatus::converged, 0, ms_since(t0),
                    "frontier", q.fingerprint());

  std::unordered_set<std::string> seen;
  seen.insert(dedup_key(root.residual));

  std::vector<FrontierNode> open;
  open.push_back(std::move(root));
  score_nodes(open, q);

  while (!open.empty()) {
    if (ms_since(t0) > cfg.time_budget_sec * 1000.0) break;

    std::vector<FrontierNode> successors;
    for (FrontierNode& node : open) {
      if (static_cast<int>(node.path.size()) >= cfg.depth) continue;
      ++nodes_expanded;
      int a = node.best_action;
      FrontierNode child;
      child.residual = canonical_phase(space.action(a).matrix * node.residual);
      std::string key = dedup_key(child.residual);
      if (!seen.insert(std::move(key)).second) continue;
      child.g = node.g - 1;
      child.path = node.path;
      child.path.push_back(static_cast<uint16_t>(a));
      child.infid = identity_infidelity(child.residual);
      if (child.infid < best_infid) {
        best_infid = child.infid;
        best_path = child.path;
      }
      if (child.infid < cfg.epsilon)
        return assemble(target, child.path, space, cfg, CompileStatus::converged,
                        nodes_expanded, ms_since(t0), "frontier", q.fingerprint());
      successors.push_back(std::move(child));
    }
    if (successors.empty()) break;  // stagnated or depth-capped

    score_nodes(successors, q);
    std::stable_sort(successors.begin(), successors.end(),
                     [](const FrontierNode& a, const FrontierNode& b) {
                       return a.best_f > b.best_f;
                     });
    if (static_cast<int>(successors.size()) > cfg.frontier_width)
      successors.resize(cfg.frontier_width);
    open = std::move(successors);
  }

  return assemble(target, best_path, space, cfg, CompileStatus::budget_exhausted,
                  nodes_expanded, ms_since(t0), "frontier", q.fingerprint());
}

CompileResult multi_dqn_search(const CMat& target,
                               const std::vector<const QSource*>& models,
                               const std::vector<const ActionSpace*>& spaces,
                               const SearchConfig& cfg) {
  if (models.empty() || models.size() != spaces.size())
    fail(ErrCode::parse, "multi-stage search: need one action space per model");
  for (size_t j = 0; j < models.size(); ++j) {
    if (spaces[j]->dim() != target.dim())
      fail(ErrCode::generic, "multi-stage search: register size mismatch across stages");
    check_pairing(*models[j], *spaces[j], target);
  }

  auto t0 = Clock::now();
  int num_qubits = spaces[0]->num_qubits();
  CMat accumulated = CMat::identity(target.dim());
  std::vector<GateOp> gates;
  std::vector<uint16_t> chosen_all;
  std::vector<double> stage_f1;
  long nodes = 0;
  CompileStatus status = CompileStatus::budget_exhausted;

  for (size_t j = 0; j < models.size(); ++j) {
    CMat residual_target = accumulated.dagger() * target;
    CompileResult stage =
        cfg.mode == SearchMode::greedy
            ? greedy_rollout(residual_target, *models[j], *spaces[j], cfg)
            : frontier_search(residual_target, *models[j], *spaces[j], cfg);
    nodes += stage.nodes_expanded;
    // Stage j approximates accumulated^dag * target, so the total operator is
    // accumulated * stage and the stage's gates are applied first.
    gates.insert(gates.begin(), stage.circuit.gates.begin(), stage.circuit.gates.end());
    chosen_all.insert(chosen_all.end(), stage.chosen_actions.begin(),
                      stage.chosen_actions.end());
    accumulated = accumulated * circuit_unitary(stage.circuit.gates, num_qubits);
    stage_f1.push_back(fidelity_f1(accumulated, target));
    if (stage.status == CompileStatus::converged) {
      status = CompileStatus::converged;
      break;
    }
  }

  CompileResult r;
  r.chosen_actions = std::move(chosen_all);
  r.stage_f1 = std::move(stage_f1);
  r.status = status;
  r.nodes_expanded = nodes;
  r.elapsed_ms = ms_since(t0);

  CircuitDoc& doc = r.circuit;
  doc.num_qubits = num_qubits;
  doc.gates = std::move(gates);
  r.f1 = fidelity_f1(circuit_unitary(doc.gates, num_qubits), target);
  std::tie(r.n1, r.n2) = gate_counts(doc.gates);
  doc.f1 = r.f1;
  doc.n1 = r.n1;
  doc.n2 = r.n2;
  doc.elapsed_ms = r.elapsed_ms;
  doc.status = r.status;
  doc.search_mode = cfg.mode == SearchMode::greedy ? "greedy" : "frontier";
  doc.model_fingerprint = models[0]->fingerprint();
  doc.seed = cfg.seed;
  doc.nodes_expanded = nodes;
  return r;
}

}  // namespace qrlc
