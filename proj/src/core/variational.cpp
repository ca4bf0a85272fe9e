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

#include "core/variational.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace qrlc {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double wrap_angle(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}
}  // namespace

CMat u3(double theta, double phi, double lam) {
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  cplx ppl = std::polar(1.0, (phi + lam) / 2);
  cplx pml = std::polar(1.0, (phi - lam) / 2);
  return CMat::from_rows({{std::conj(ppl) * c, cplx(0, -1) * std::conj(pml) * s},
                          {cplx(0, -1) * pml * s, ppl * c}});
}

namespace {

// u3 plus its three angle derivatives.
void u3_with_grad(double theta, double phi, double lam, CMat& m, CMat grad[3]) {
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  cplx ppl = std::polar(1.0, (phi + lam) / 2);
  cplx pml = std::polar(1.0, (phi - lam) / 2);
  cplx mi(0, -1), hi(0, 0.5), hmi(0, -0.5);

  cplx e00 = std::conj(ppl) * c;
  cplx e01 = mi * std::conj(pml) * s;
  cplx e10 = mi * pml * s;
  cplx e11 = ppl * c;
  m = CMat::from_rows({{e00, e01}, {e10, e11}});

  grad[0] = CMat::from_rows({{std::conj(ppl) * (-s / 2), mi * std::conj(pml) * (c / 2)},
                             {mi * pml * (c / 2), ppl * (-s / 2)}});
  grad[1] = CMat::from_rows({{hmi * e00, hmi * e01}, {hi * e10, hi * e11}});
  grad[2] = CMat::from_rows({{hmi * e00, hi * e01}, {hmi * e10, hi * e11}});
}

cplx inner_trace(const CMat& u, const CMat& v) {  // Tr(u^dag v)
  cplx t = 0.0;
  for (int r = 0; r < u.dim(); ++r)
    for (int c = 0; c < u.dim(); ++c) t += std::conj(u(r, c)) * v(r, c);
  return t;
}

}  // namespace

std::array<double, 3> euler_angles(const CMat& g) {
  if (g.dim() != 2) fail(ErrCode::generic, "euler_angles: expects a 2x2 unitary");
  double s = std::abs(g(1, 0)), c = std::abs(g(0, 0));
  double theta = 2.0 * std::atan2(s, c);
  if (s < 1e-7) {  // diagonal: only phi + lam matters
    double lam = wrap_angle(std::arg(g(1, 1)) - std::arg(g(0, 0)));
    return {0.0, 0.0, lam};
  }
  if (c < 1e-7) {  // anti-diagonal: only phi - lam matters
    double phi = wrap_angle(std::arg(g(1, 0)) - std::arg(g(0, 1)));
    return {kPi, phi, 0.0};
  }
  double phi = wrap_angle(std::arg(g(1, 0)) - std::arg(g(0, 0)) + kPi / 2);
  double lam = wrap_angle(std::arg(g(1, 1)) - std::arg(g(1, 0)) - kPi / 2);
  return {theta, phi, lam};
}

Ansatz Ansatz::from_circuit(const CircuitDoc& doc, const ActionSpace* space) {
  Ansatz a;
  a.num_qubits_ = doc.num_qubits;
  for (const GateOp& g : doc.gates) {
    if (space && g.name != "u3") {
      bool found = false;
      for (const Action& act : space->actions())
        if (act.gate.name == g.name && act.qubits == g.qubits) found = true;
      if (!found)
        fail(ErrCode::parse, "ansatz: gate " + g.name + " is not in the action space");
    }
    Slot slot;
    slot.source = g;
    if (g.qubits.size() == 1) {
      CMat local;
      if (g.name == "u3") {
        if (g.angles.size() != 3) fail(ErrCode::parse, "ansatz: u3 gate needs 3 angles");
        local = u3(g.angles[0], g.angles[1], g.angles[2]);
      } else {
        std::optional<double> angle;
        if (!g.angles.empty()) angle = g.angles[0];
        local = gate_matrix(g.name, angle);
      }
      slot.parametric = true;
      slot.qubit = g.qubits[0];
      slot.init = euler_angles(local);
      a.u3_slots_.push_back(static_cast<int>(a.slots_.size()));
    } else {
      std::optional<double> angle;
      if (!g.angles.empty()) angle = g.angles[0];
      slot.fixed = lift_gate(gate_matrix(g.name, angle), g.qubits, doc.num_qubits);
    }
    a.slots_.push_back(std::move(slot));
  }
  return a;
}

std::vector<double> Ansatz::initial_params() const {
  std::vector<double> p;
  p.reserve(num_params());
  for (int idx : u3_slots_)
    for (double ang : slots_[idx].init) p.push_back(ang);
  return p;
}

CMat Ansatz::evaluate(const std::vector<double>& params) const {
  if (static_cast<int>(params.size()) != num_params())
    fail(ErrCode::generic, "ansatz: parameter count mismatch");
  CMat v = CMat::identity(dim());
  int pi = 0;
  for (const Slot& s : slots_) {
    if (s.parametric) {
      CMat local = u3(params[pi], params[pi + 1], params[pi + 2]);
      pi += 3;
      v = lift_gate(local, {s.qubit}, num_qubits_) * v;
    } else {
      v = s.fixed * v;
    }
  }
  return v;
}

void Ansatz::loss_and_grad(const std::vector<double>& params, const CMat& target,
                           bool phase_invariant, double& loss,
                           std::vector<double>& grad) const {
  if (target.dim() != dim()) fail(ErrCode::generic, "ansatz: target dimension mismatch");
  int n = static_cast<int>(slots_.size());

  // Lifted slot matrices and angle derivatives at the current parameters.
  std::vector<CMat> mats(n);
  std::vector<std::array<CMat, 3>> derivs(u3_slots_.size());
  int pi = 0, u3i = 0;
  for (int i = 0; i < n; ++i) {
    if (slots_[i].parametric) {
      CMat local, dlocal[3];
      u3_with_grad(params[pi], params[pi + 1], params[pi + 2], local, dlocal);
      pi += 3;
      mats[i] = lift_gate(local, {slots_[i].qubit}, num_qubits_);
      for (int a = 0; a < 3; ++a)
        derivs[u3i][a] = lift_gate(dlocal[a], {slots_[i].qubit}, num_qubits_);
      ++u3i;
    } else {
      mats[i] = slots_[i].fixed;
    }
  }

  std::vector<CMat> prefix(n + 1), suffix(n + 1);
  prefix[0] = CMat::identity(dim());
  for (int i = 0; i < n; ++i) prefix[i + 1] = mats[i] * prefix[i];
  suffix[n] = CMat::identity(dim());
  for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * mats[i];

  const CMat& v = prefix[n];
  cplx t = inner_trace(target, v);
  double dimv = static_cast<double>(dim());
  loss = phase_invariant ? dimv - std::abs(t) : dimv - t.real();

  grad.assign(num_params(), 0.0);
  for (size_t slot_pos = 0; slot_pos < u3_slots_.size(); ++slot_pos) {
    int i = u3_slots_[slot_pos];
    for (int a = 0; a < 3; ++a) {
      CMat dv = suffix[i + 1] * derivs[slot_pos][a] * prefix[i];
      cplx dt = inner_trace(target, dv);
      double g;
      if (phase_invariant) {
        double at = std::abs(t);
        g = at < 1e-15 ? 0.0 : -(std::conj(t) * dt).real() / at;
      } else {
        g = -dt.real();
      }
      grad[3 * slot_pos + a] = g;
    }
  }
}

std::vector<GateOp> Ansatz::to_gates(const std::vector<double>& params) const {
  std::vector<GateOp> gates;
  int pi = 0;
  for (const Slot& s : slots_) {
    if (s.parametric) {
      gates.push_back(GateOp{"u3", {s.qubit}, {params[pi], params[pi + 1], params[pi + 2]}});
      pi += 3;
    } else {
      gates.push_back(s.source);
    }
  }
  return gates;
}

namespace {

struct RestartOutcome {
  std::vector<double> params;
  double f1 = 0.0;
  std::vector<double> trace;
};

RestartOutcome run_restart(const Ansatz& ansatz, const CMat& target, const VarConfig& cfg,
                           std::vector<double> params) {
  constexpr double kPiLocal = 3.14159265358979323846;
  std::vector<double> m(params.size(), 0.0), v(params.size(), 0.0), grad;
  double loss = 0.0;
  RestartOutcome out;
  out.trace.reserve(cfg.steps);
  for (int step = 1; step <= cfg.steps; ++step) {
    ansatz.loss_and_grad(params, target, cfg.phase_invariant, loss, grad);
    out.trace.push_back(loss);
    // cfg.lr is the initial rate: held for the first half of the budget, then
    // cosine-annealed so Adam settles instead of dithering at a fixed step.
    double lr = cfg.lr;
    int half = cfg.steps / 2;
    if (step > half && half > 0)
      lr = cfg.lr * 0.5 * (1.0 + std::cos(kPiLocal * (step - half) / (cfg.steps - half)));
    double bc1 = 1.0 - std::pow(0.9, step);
    double bc2 = 1.0 - std::pow(0.999, step);
    for (size_t i = 0; i < params.size(); ++i) {
      m[i] = 0.9 * m[i] + 0.1 * grad[i];
      v[i] = 0.999 * v[i] + 0.001 * grad[i] * grad[i];
      params[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + 1e-8);
    }
  }
  out.f1 = fidelity_f1(ansatz.evaluate(params), target);
  out.params = std::move(params);
  return out;
}

}  // namespace

VarResult optimize(const Ansatz& ansatz, const CMat& raw_target, const VarConfig& cfg) {
  if (cfg.steps < 1 || cfg.restarts < 1 || cfg.lr <= 0)
    fail(ErrCode::parse, "variational: steps, restarts and lr must be positive");

  // The real-part loss is phase-rigid: a target whose determinant phase sits
  // badly against the reachable set leaves the trace gradient starved. Global
  // phase is unobservable, so rotate the target into SU(dim) up front;
  // fidelities are unaffected.
  CMat target = raw_target;
  target *= std::polar(1.0, -std::arg(determinant(raw_target)) / raw_target.dim());

  std::vector<double> init = ansatz.initial_params();
  VarResult result;
  result.init_f1 = fidelity_f1(ansatz.evaluate(init), target);
  result.best_params = init;
  result.best_f1 = result.init_f1;

  // Jittered starting points are drawn up front so the restarts can run in
  // parallel while staying deterministic. The jitter widens with the restart
  // index: early restarts stay near the searched solution, later ones escape
  // the flat ridges of the angle chart.
  Rng rng(cfg.seed ^ 0xc0ac29b7c97c50ddULL);
  std::vector<std::vector<double>> starts(cfg.restarts, init);
  for (int r = 1; r < cfg.restarts; ++r)
    for (double& p : starts[r]) p += cfg.jitter * r * rng.normal();

  if (ansatz.num_params() == 0) {
    result.raw_trace.clear();
    return result;
  }

  std::vector<std::future<RestartOutcome>> futures;
  futures.reserve(cfg.restarts);
  for (int r = 0; r < cfg.restarts; ++r)
    futures.push_back(std::async(std::launch::async, run_restart, std::cref(ansatz),
                                 std::cref(target), cfg, starts[r]));

  std::vector<double> winning_trace;
  for (auto& f : futures) {
    RestartOutcome out = f.get();
    if (out.f1 > result.best_f1) {
      result.best_f1 = out.f1;
      result.best_params = std::move(out.params);
      winning_trace = std::move(out.trace);
    }
  }
  result.raw_trace = std::move(winning_trace);
  result.smoothed_trace.reserve(result.raw_trace.size());
  double best = std::numeric_limits<double>::infinity();
  for (double l : result.raw_trace) {
    best = std::min(best, l);
    result.smoothed_trace.push_back(best);
  }
  return result;
}

}  // namespace qrlc
