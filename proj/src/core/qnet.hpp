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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/dataset.hpp"
#include "core/gates.hpp"
#include "core/linalg.hpp"

namespace qrlc {

// Row-major real matrix. Multiplication is BLAS-backed; see qnet.cpp.
struct RMat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  RMat() = default;
  RMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  double* row(int r) { return a.data() + static_cast<size_t>(r) * cols; }
  const double* row(int r) const { return a.data() + static_cast<size_t>(r) * cols; }
};

// C = op(A) * op(B); op transposes when the flag is set.
void matmul(const RMat& A, bool ta, const RMat& B, bool tb, RMat& C);

// Feature encoding of a percept: canonical phase, then all real parts in
// row-major order followed by all imaginary parts (2 * 4^M reals).
std::vector<double> encode_percept(const CMat& u);
int encoded_width(int num_qubits);

struct NetworkShape {
  int input = 0;
  int hidden1 = 512;
  int hidden2 = 256;
  int blocks = 2;  // residual blocks, two hidden layers each
  int output = 0;
};

struct Linear {
  RMat w;  // out x in
  std::vector<double> b;
};

struct BatchNorm {
  std::vector<double> gamma, beta, run_mean, run_var;
};

// Residual MLP with leaky-ReLU activations and batch normalization on every
// hidden layer. Eval-mode inference uses running statistics and is a pure
// function of (params, input).
struct NetworkParams {
  NetworkShape shape;
  int num_qubits = 0;
  uint64_t fingerprint = 0;  // action-space fingerprint this net was paired with
  int loop_index = 0;        // provenance only (sidecar metadata)
  std::vector<Linear> lin;   // in->h1, h1->h2, blocks x (h2->h2, h2->h2), h2->out
  std::vector<BatchNorm> bn; // one per hidden linear

  int num_layers() const { return static_cast<int>(lin.size()); }
};

NetworkParams init_network(NetworkShape shape, int num_qubits, uint64_t fingerprint,
                           uint64_t seed);

// Visits every tensor in declaration order; `trainable` is false for the
// batch-norm running statistics. This order defines the model file layout.
void for_each_tensor(NetworkParams& p,
                     const std::function<void(std::vector<double>&, bool)>& fn);

RMat forward_eval(const NetworkParams& p, const RMat& x);
std::vector<double> forward_eval1(const NetworkParams& p, const std::vector<double>& x);

// Gradient buffers aligned with the trainable tensors of a network.
struct Gradients {
  std::vector<std::vector<double>> g;
};
Gradients make_gradients(NetworkParams& p);

// Training-mode forward + mean-squared-error against `y` + full backward pass.
// Updates running statistics; accumulates nothing (grads are overwritten).
double mse_train_backward(NetworkParams& p, const RMat& x, const RMat& y, Gradients& grads);

// Loss values as the optimizer sees them (training-mode forward), without
// touching gradients beyond the internal pass.
double loss_exact(NetworkParams& p, const RMat& x, const RMat& y);
double loss_bootstrap(NetworkParams& p, const NetworkParams& target_net,
                      const std::vector<const CMat*>& percepts, const ActionSpace& space);

// Bellman-style targets from the frozen network: for percept W and action j,
// max_a Q(A_j W, a) - 1, or exactly 0 when A_j W is within 1e-4 infidelity of
// the identity.
RMat bootstrap_targets(const NetworkParams& target_net,
                       const std::vector<const CMat*>& percepts, const ActionSpace& space);

struct AdamState {
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  long step = 0;
  std::vector<std::vector<double>> m, v;
};
AdamState make_adam(NetworkParams& p);
void adam_step(NetworkParams& p, const Gradients& grads, AdamState& state, double lr);

struct TrainConfig {
  double lr = 1e-3;
  double delta = 0.02;        // early-stop loss threshold per loop
  int minibatch = 1024;
  int epoch_factor = 100;     // epoch cap at loop l is epoch_factor * l
  int exact_horizon = 3;      // exact labels for l <= horizon, bootstrap beyond
  uint64_t seed = 1;
  NetworkShape shape;         // input/output widths are filled in by train()
};

struct TrainLogEntry {
  int loop = 0;
  int epoch = 0;
  double loss = 0.0;
  bool bootstrap = false;
};

struct TrainResult {
  NetworkParams params;
  std::vector<TrainLogEntry> log;
};

using CheckpointFn = std::function<void(const NetworkParams&, int loop)>;

// Loop-wise training: at loop l, exact labels pair the previous loop's
// percepts with their per-action child values; beyond the exact horizon the
// loop's own percepts are regressed onto frozen-network bootstrap targets.
// The frozen copy syncs at every loop end and on early stop.
TrainResult train(const ActionSpace& space, const TrainingSet& ts, const TrainConfig& cfg,
                  const CheckpointFn& checkpoint = {});

void save_model(const NetworkParams& p, const std::string& path);
NetworkParams load_model(const std::string& path);
// Load plus fingerprint pinning; throws ErrCode::fingerprint on mismatch.
NetworkParams load_model_for_space(const std::string& path, uint64_t expected_fingerprint);

}  // namespace qrlc
