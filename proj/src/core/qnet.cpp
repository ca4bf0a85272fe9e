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

#include "core/qnet.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "core/dedup.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"

// Fortran BLAS entry point (column-major). Row-major products below use the
// usual transposition identity rather than copying buffers.
extern "C" void dgemm_(const char* transa, const char* transb, const int* m,
                       const int* n, const int* k, const double* alpha,
                       const double* a, const int* lda, const double* b,
                       const int* ldb, const double* beta, double* c,
                       const int* ldc);

namespace qrlc {

namespace {
constexpr double kLeakySlope = 0.01;
constexpr double kBnEps = 1e-5;
constexpr double kBnMomentum = 0.9;
constexpr double kGoalInfidelity = 1e-4;
}  // namespace

void matmul(const RMat& A, bool ta, const RMat& B, bool tb, RMat& C) {
  int m = ta ? A.cols : A.rows;
  int k = ta ? A.rows : A.cols;
  int kb = tb ? B.cols : B.rows;
  int n = tb ? B.rows : B.cols;
  if (k != kb) fail(ErrCode::generic, "matmul: inner dimension mismatch");
  C = RMat(m, n);
  if (m == 0 || n == 0 || k == 0) return;
  double alpha = 1.0, beta = 0.0;
  // Row-major C = op(A) op(B)  <=>  column-major C^T = op(B)^T op(A)^T.
  dgemm_(tb ? "T" : "N", ta ? "T" : "N", &n, &m, &k, &alpha, B.a.data(), &B.cols,
         A.a.data(), &A.cols, &beta, C.a.data(), &n);
}

std::vector<double> encode_percept(const CMat& u) {
  CMat c = canonical_phase(u);
  size_t n = c.data().size();
  std::vector<double> out(2 * n);
  for (size_t i = 0; i < n; ++i) {
    out[i] = c.data()[i].real();
    out[n + i] = c.data()[i].imag();
  }
  return out;
}

int encoded_width(int num_qubits) {
  int dim = 1 << num_qubits;
  return 2 * dim * dim;
}

NetworkParams init_network(NetworkShape shape, int num_qubits, uint64_t fingerprint,
                           uint64_t seed) {
  if (shape.input <= 0 || shape.hidden1 <= 0 || shape.hidden2 <= 0 || shape.blocks < 0 ||
      shape.output <= 0)
    fail(ErrCode::parse, "network shape fields must be positive");

  NetworkParams p;
  p.shape = shape;
  p.num_qubits = num_qubits;
  p.fingerprint = fingerprint;

  Rng rng(seed ^ 0x452821e638d01377ULL);
  auto add_linear = [&](int in, int out) {
    Linear l;
    l.w = RMat(out, in);
    double std = std::sqrt(2.0 / in);
    for (double& v : l.w.a) v = std * rng.normal();
    l.b.assign(out, 0.0);
    p.lin.push_back(std::move(l));
  };
  auto add_bn = [&](int width) {
    BatchNorm bn;
    bn.gamma.assign(width, 1.0);
    bn.beta.assign(width, 0.0);
    bn.run_mean.assign(width, 0.0);
    bn.run_var.assign(width, 1.0);
    p.bn.push_back(std::move(bn));
  };

  add_linear(shape.input, shape.hidden1);
  add_bn(shape.hidden1);
  add_linear(shape.hidden1, shape.hidden2);
  add_bn(shape.hidden2);
  for (int k = 0; k < shape.blocks; ++k) {
    add_linear(shape.hidden2, shape.hidden2);
    add_bn(shape.hidden2);
    add_linear(shape.hidden2, shape.hidden2);
    add_bn(shape.hidden2);
  }
  add_linear(shape.hidden2, shape.output);
  return p;
}

void for_each_tensor(NetworkParams& p,
                     const std::function<void(std::vector<double>&, bool)>& fn) {
  for (size_t i = 0; i < p.lin.size(); ++i) {
    fn(p.lin[i].w.a, true);
    fn(p.lin[i].b, true);
    if (i < p.bn.size()) {
      fn(p.bn[i].gamma, true);
      fn(p.bn[i].beta, true);
      fn(p.bn[i].run_mean, false);
      fn(p.bn[i].run_var, false);
    }
  }
}

// ---------------------------------------------------------------------------
// Forward / backward
// ---------------------------------------------------------------------------

namespace {

struct BnCache {
  RMat z;     // pre-normalization input
  RMat xhat;  // normalized values
  std::vector<double> inv_std;
};

struct Tape {
  std::vector<RMat> lin_in;   // aligned with params.lin
  std::vector<BnCache> bn;    // aligned with params.bn
  std::vector<RMat> act_in;   // pre-activation, aligned with params.bn
  std::vector<RMat> block_in; // residual branch inputs
};

RMat linear_fwd(const Linear& l, const RMat& x) {
  RMat z;
  matmul(x, false, l.w, true, z);
  for (int r = 0; r < z.rows; ++r) {
    double* zr = z.row(r);
    for (int c = 0; c < z.cols; ++c) zr[c] += l.b[c];
  }
  return z;
}

// dZ -> (dW, db, dX)
RMat linear_bwd(const Linear& l, const RMat& x, const RMat& dz, std::vector<double>& dw,
                std::vector<double>& db) {
  RMat dwm;
  matmul(dz, true, x, false, dwm);
  dw = std::move(dwm.a);
  db.assign(dz.cols, 0.0);
  for (int r = 0; r < dz.rows; ++r) {
    const double* zr = dz.row(r);
    for (int c = 0; c < dz.cols; ++c) db[c] += zr[c];
  }
  RMat dx;
  matmul(dz, false, l.w, false, dx);
  return dx;
}

RMat bn_train_fwd(BatchNorm& bn, RMat z, BnCache& cache, bool update_running) {
  int B = z.rows, F = z.cols;
  std::vector<double> mean(F, 0.0), var(F, 0.0);
  for (int r = 0; r < B; ++r) {
    const double* zr = z.row(r);
    for (int c = 0; c < F; ++c) mean[c] += zr[c];
  }
  for (double& m : mean) m /= B;
  for (int r = 0; r < B; ++r) {
    const double* zr = z.row(r);
    for (int c = 0; c < F; ++c) {
      double d = zr[c] - mean[c];
      var[c] += d * d;
    }
  }
  for (double& v : var) v /= B;

  cache.inv_std.resize(F);
  for (int c = 0; c < F; ++c) cache.inv_std[c] = 1.0 / std::sqrt(var[c] + kBnEps);

  RMat y(B, F);
  cache.xhat = RMat(B, F);
  for (int r = 0; r < B; ++r) {
    const double* zr = z.row(r);
    double* xr = cache.xhat.row(r);
    double* yr = y.row(r);
    for (int c = 0; c < F; ++c) {
      xr[c] = (zr[c] - mean[c]) * cache.inv_std[c];
      yr[c] = bn.gamma[c] * xr[c] + bn.beta[c];
    }
  }
  if (update_running) {
    for (int c = 0; c < F; ++c) {
      bn.run_mean[c] = kBnMomentum * bn.run_mean[c] + (1 - kBnMomentum) * mean[c];
      bn.run_var[c] = kBnMomentum * bn.run_var[c] + (1 - kBnMomentum) * var[c];
    }
  }
  cache.z = std::move(z);
  return y;
}

RMat bn_eval_fwd(const BatchNorm& bn, const RMat& z) {
  int B = z.rows, F = z.cols;
  RMat y(B, F);
  for (int c = 0; c < F; ++c) {
    double inv = 1.0 / std::sqrt(bn.run_var[c] + kBnEps);
    double scale = bn.gamma[c] * inv;
    double shift = bn.beta[c] - bn.run_mean[c] * scale;
    for (int r = 0; r < B; ++r) y.at(r, c) = scale * z.at(r, c) + shift;
  }
  return y;
}

// Gradient through training-mode normalization (batch statistics are part of
// the graph).
RMat bn_bwd(const BatchNorm& bn, const BnCache& cache, const RMat& dy,
            std::vector<double>& dgamma, std::vector<double>& dbeta) {
  int B = dy.rows, F = dy.cols;
  dgamma.assign(F, 0.0);
  dbeta.assign(F, 0.0);
  std::vector<double> sum_dxhat(F, 0.0), sum_dxhat_xhat(F, 0.0);
  for (int r = 0; r < B; ++r) {
    const double* dyr = dy.row(r);
    const double* xr = cache.xhat.row(r);
    for (int c = 0; c < F; ++c) {
      double dxhat = dyr[c] * bn.gamma[c];
      dgamma[c] += dyr[c] * xr[c];
      dbeta[c] += dyr[c];
      sum_dxhat[c] += dxhat;
      sum_dxhat_xhat[c] += dxhat * xr[c];
    }
  }
  RMat dz(B, F);
  for (int r = 0; r < B; ++r) {
    const double* dyr = dy.row(r);
    const double* xr = cache.xhat.row(r);
    double* dzr = dz.row(r);
    for (int c = 0; c < F; ++c) {
      double dxhat = dyr[c] * bn.gamma[c];
      dzr[c] = cache.inv_std[c] *
               (dxhat - sum_dxhat[c] / B - xr[c] * sum_dxhat_xhat[c] / B);
    }
  }
  return dz;
}

void lrelu_fwd(RMat& x) {
  for (double& v : x.a)
    if (v < 0) v *= kLeakySlope;
}

void lrelu_bwd(RMat& d, const RMat& pre) {
  for (size_t i = 0; i < d.a.size(); ++i)
    if (pre.a[i] < 0) d.a[i] *= kLeakySlope;
}

RMat forward_train(NetworkParams& p, const RMat& x, Tape& tape, bool update_running) {
  int nlin = p.num_layers();
  tape.lin_in.resize(nlin);
  tape.bn.resize(p.bn.size());
  tape.act_in.resize(p.bn.size());
  tape.block_in.resize(p.shape.blocks);

  RMat cur = x;
  for (int i = 0; i < 2; ++i) {
    tape.lin_in[i] = cur;
    RMat h = bn_train_fwd(p.bn[i], linear_fwd(p.lin[i], cur), tape.bn[i], update_running);
    tape.act_in[i] = h;
    lrelu_fwd(h);
    cur = std::move(h);
  }
  for (int k = 0; k < p.shape.blocks; ++k) {
    int la = 2 + 2 * k, lb = 3 + 2 * k;
    tape.block_in[k] = cur;
    tape.lin_in[la] = cur;
    RMat ha =
        bn_train_fwd(p.bn[la], linear_fwd(p.lin[la], cur), tape.bn[la], update_running);
    tape.act_in[la] = ha;
    lrelu_fwd(ha);
    tape.lin_in[lb] = ha;
    RMat hb =
        bn_train_fwd(p.bn[lb], linear_fwd(p.lin[lb], ha), tape.bn[lb], update_running);
    for (size_t i = 0; i < hb.a.size(); ++i) hb.a[i] += tape.block_in[k].a[i];
    tape.act_in[lb] = hb;
    lrelu_fwd(hb);
    cur = std::move(hb);
  }
  tape.lin_in[nlin - 1] = cur;
  return linear_fwd(p.lin[nlin - 1], cur);
}

void backward(NetworkParams& p, const Tape& tape, const RMat& dout, Gradients& g) {
  int nlin = p.num_layers();
  auto wslot = [](int layer) { return 4 * layer; };

  RMat dcur = linear_bwd(p.lin[nlin - 1], tape.lin_in[nlin - 1], dout,
                         g.g[wslot(nlin - 1)], g.g[wslot(nlin - 1) + 1]);
  for (int k = p.shape.blocks - 1; k >= 0; --k) {
    int la = 2 + 2 * k, lb = 3 + 2 * k;
    lrelu_bwd(dcur, tape.act_in[lb]);
    RMat dresidual = dcur;
    RMat dzb = bn_bwd(p.bn[lb], tape.bn[lb], dcur, g.g[wslot(lb) + 2], g.g[wslot(lb) + 3]);
    RMat dha = linear_bwd(p.lin[lb], tape.lin_in[lb], dzb, g.g[wslot(lb)], g.g[wslot(lb) + 1]);
    lrelu_bwd(dha, tape.act_in[la]);
    RMat dza = bn_bwd(p.bn[la], tape.bn[la], dha, g.g[wslot(la) + 2], g.g[wslot(la) + 3]);
    RMat dx = linear_bwd(p.lin[la], tape.lin_in[la], dza, g.g[wslot(la)], g.g[wslot(la) + 1]);
    for (size_t i = 0; i < dx.a.size(); ++i) dx.a[i] += dresidual.a[i];
    dcur = std::move(dx);
  }
  for (int i = 1; i >= 0; --i) {
    lrelu_bwd(dcur, tape.act_in[i]);
    RMat dz = bn_bwd(p.bn[i], tape.bn[i], dcur, g.g[wslot(i) + 2], g.g[wslot(i) + 3]);
    dcur = linear_bwd(p.lin[i], tape.lin_in[i], dz, g.g[wslot(i)], g.g[wslot(i) + 1]);
  }
}

}  // namespace

RMat forward_eval(const NetworkParams& p, const RMat& x) {
  const NetworkParams& cp = p;
  RMat cur = x;
  for (int i = 0; i < 2; ++i) {
    RMat h = bn_eval_fwd(cp.bn[i], linear_fwd(cp.lin[i], cur));
    lrelu_fwd(h);
    cur = std::move(h);
  }
  for (int k = 0; k < cp.shape.blocks; ++k) {
    int la = 2 + 2 * k, lb = 3 + 2 * k;
    RMat ha = bn_eval_fwd(cp.bn[la], linear_fwd(cp.lin[la], cur));
    lrelu_fwd(ha);
    RMat hb = bn_eval_fwd(cp.bn[lb], linear_fwd(cp.lin[lb], ha));
    for (size_t i = 0; i < hb.a.size(); ++i) hb.a[i] += cur.a[i];
    lrelu_fwd(hb);
    cur = std::move(hb);
  }
  RMat out = linear_fwd(cp.lin[cp.num_layers() - 1], cur);
  for (double v : out.a)
    if (!std::isfinite(v)) fail(ErrCode::generic, "forward: non-finite output");
  return out;
}

std::vector<double> forward_eval1(const NetworkParams& p, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != p.shape.input)
    fail(ErrCode::generic, "forward: input width mismatch");
  RMat m(1, p.shape.input);
  m.a = x;
  return forward_eval(p, m).a;
}

Gradients make_gradients(NetworkParams& p) {
  Gradients g;
  for_each_tensor(p, [&](std::vector<double>& t, bool trainable) {
    if (trainable) g.g.emplace_back(t.size(), 0.0);
  });
  return g;
}

double mse_train_backward(NetworkParams& p, const RMat& x, const RMat& y, Gradients& grads) {
  Tape tape;
  RMat out = forward_train(p, x, tape, /*update_running=*/true);
  if (out.rows != y.rows || out.cols != y.cols)
    fail(ErrCode::generic, "loss: label shape mismatch");
  double n = static_cast<double>(out.rows) * out.cols;
  double loss = 0.0;
  RMat dout(out.rows, out.cols);
  for (size_t i = 0; i < out.a.size(); ++i) {
    double r = out.a[i] - y.a[i];
    loss += r * r;
    dout.a[i] = 2.0 * r / n;
  }
  backward(p, tape, dout, grads);
  return loss / n;
}

double loss_exact(NetworkParams& p, const RMat& x, const RMat& y) {
  Tape tape;
  RMat out = forward_train(p, x, tape, /*update_running=*/false);
  if (out.rows != y.rows || out.cols != y.cols)
    fail(ErrCode::generic, "loss: label shape mismatch");
  double n = static_cast<double>(out.rows) * out.cols;
  double loss = 0.0;
  for (size_t i = 0; i < out.a.size(); ++i) {
    double r = out.a[i] - y.a[i];
    loss += r * r;
  }
  return loss / n;
}

RMat bootstrap_targets(const NetworkParams& target_net,
                       const std::vector<const CMat*>& percepts, const ActionSpace& space) {
  int d = space.size();
  int n = static_cast<int>(percepts.size());
  RMat y(n, d);

  // Children needing a network estimate, encoded in one batch.
  std::vector<std::pair<int, int>> pending;
  std::vector<double> features;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      CMat child = space.action(j).matrix * (*percepts[i]);
      if (identity_infidelity(child) < kGoalInfidelity) {
        y.at(i, j) = 0.0;  // goal anchoring
      } else {
        std::vector<double> f = encode_percept(child);
        features.insert(features.end(), f.begin(), f.end());
        pending.emplace_back(i, j);
      }
    }
  }
  if (!pending.empty()) {
    RMat x(static_cast<int>(pending.size()), target_net.shape.input);
    x.a = std::move(features);
    RMat q = forward_eval(target_net, x);
    for (size_t k = 0; k < pending.size(); ++k) {
      const double* row = q.row(static_cast<int>(k));
      double best = row[0];
      for (int a = 1; a < q.cols; ++a) best = std::max(best, row[a]);
      y.at(pending[k].first, pending[k].second) = best - 1.0;
    }
  }
  return y;
}

double loss_bootstrap(NetworkParams& p, const NetworkParams& target_net,
                      const std::vector<const CMat*>& percepts, const ActionSpace& space) {
  if (percepts.empty()) fail(ErrCode::generic, "loss_bootstrap: empty batch");
  RMat y = bootstrap_targets(target_net, percepts, space);
  RMat x(static_cast<int>(percepts.size()), p.shape.input);
  for (size_t i = 0; i < percepts.size(); ++i) {
    std::vector<double> f = encode_percept(*percepts[i]);
    std::copy(f.begin(), f.end(), x.row(static_cast<int>(i)));
  }
  return loss_exact(p, x, y);
}

AdamState make_adam(NetworkParams& p) {
  AdamState s;
  for_each_tensor(p, [&](std::vector<double>& t, bool trainable) {
    if (trainable) {
      s.m.emplace_back(t.size(), 0.0);
      s.v.emplace_back(t.size(), 0.0);
    }
  });
  return s;
}

void adam_step(NetworkParams& p, const Gradients& grads, AdamState& state, double lr) {
  ++state.step;
  double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  size_t slot = 0;
  for_each_tensor(p, [&](std::vector<double>& t, bool trainable) {
    if (!trainable) return;
    const std::vector<double>& g = grads.g[slot];
    std::vector<double>& m = state.m[slot];
    std::vector<double>& v = state.v[slot];
    if (g.size() != t.size()) fail(ErrCode::generic, "adam: gradient shape mismatch");
    for (size_t i = 0; i < t.size(); ++i) {
      if (!std::isfinite(g[i])) fail(ErrCode::generic, "adam: non-finite gradient");
      m[i] = state.beta1 * m[i] + (1 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1 - state.beta2) * g[i] * g[i];
      double mhat = m[i] / bc1;
      double vhat = v[i] / bc2;
      t[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
    }
    ++slot;
  });
}

// ---------------------------------------------------------------------------
// Training driver
// ---------------------------------------------------------------------------

namespace {

RMat encode_batch(const std::vector<Percept>& percepts, int input_width) {
  RMat x(static_cast<int>(percepts.size()), input_width);
  for (size_t i = 0; i < percepts.size(); ++i) {
    std::vector<double> f = encode_percept(percepts[i].unitary);
    std::copy(f.begin(), f.end(), x.row(static_cast<int>(i)));
  }
  return x;
}

void shuffle(std::vector<int>& order, Rng& rng) {
  for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
    std::swap(order[i], order[rng.uniform_int(i + 1)]);
}

}  // namespace

TrainResult train(const ActionSpace& space, const TrainingSet& ts, const TrainConfig& cfg,
                  const CheckpointFn& checkpoint) {
  if (cfg.lr <= 0 || cfg.delta <= 0 || cfg.minibatch < 1 || cfg.epoch_factor < 1 ||
      cfg.exact_horizon < 1)
    fail(ErrCode::parse, "train: config fields must be positive");
  if (ts.space_fingerprint != space.fingerprint())
    fail(ErrCode::fingerprint, "train: dataset was generated for a different action space");

  NetworkShape shape = cfg.shape;
  shape.input = encoded_width(space.num_qubits());
  shape.output = space.size();

  TrainResult result;
  NetworkParams params = init_network(shape, space.num_qubits(), space.fingerprint(), cfg.seed);
  NetworkParams frozen = params;
  AdamState adam = make_adam(params);
  Gradients grads = make_gradients(params);
  Rng rng(cfg.seed ^ 0xbe5466cf34e90c6cULL);

  // Exact-label rows accumulate across loops (easy-to-hard), so later batches
  // keep refreshing shallow states instead of forgetting them.
  RMat exact_x(0, shape.input), exact_y(0, space.size());
  auto append_rows = [](RMat& dst, const RMat& src) {
    dst.a.insert(dst.a.end(), src.a.begin(), src.a.end());
    dst.rows += src.rows;
    dst.cols = src.cols;
  };

  int total_loops = static_cast<int>(ts.loops.size());
  for (int l = 1; l <= total_loops; ++l) {
    bool bootstrap = l > cfg.exact_horizon;
    if (!bootstrap) {
      const std::vector<Percept>& parents = ts.parents_of(l);
      const LoopData& data = ts.loop(l);
      if (!parents.empty() && !data.child_values.empty()) {
        RMat px = encode_batch(parents, shape.input);
        RMat py(static_cast<int>(parents.size()), space.size());
        for (size_t i = 0; i < data.child_values.size(); ++i)
          py.a[i] = static_cast<double>(data.child_values[i]);
        append_rows(exact_x, px);
        append_rows(exact_y, py);
      }
    }

    RMat x = exact_x, y = exact_y;
    if (bootstrap) {
      // Frontier percepts from every sampled loop so far, deduplicated (the
      // random walks revisit states heavily), with targets from the frozen
      // copy as of this loop's start.
      std::vector<const CMat*> ps;
      std::unordered_set<std::string> seen;
      for (int k = cfg.exact_horizon + 1; k <= l; ++k)
        for (const Percept& p : ts.loop(k).fresh)
          if (seen.insert(dedup_key(p.unitary)).second) ps.push_back(&p.unitary);
      if (!ps.empty()) {
        RMat bx(static_cast<int>(ps.size()), shape.input);
        for (size_t i = 0; i < ps.size(); ++i) {
          std::vector<double> f = encode_percept(*ps[i]);
          std::copy(f.begin(), f.end(), bx.row(static_cast<int>(i)));
        }
        RMat by = bootstrap_targets(frozen, ps, space);
        append_rows(x, bx);
        append_rows(y, by);
      }
    }
    if (x.rows == 0) continue;  // closure exhausted and nothing sampled

    int n = x.rows;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    int epoch_cap = cfg.epoch_factor * l;

    for (int epoch = 1; epoch <= epoch_cap; ++epoch) {
      shuffle(order, rng);
      double loss_sum = 0.0;
      for (int start = 0; start < n; start += cfg.minibatch) {
        int bsize = std::min(cfg.minibatch, n - start);
        RMat xb(bsize, x.cols), yb(bsize, y.cols);
        for (int r = 0; r < bsize; ++r) {
          std::copy(x.row(order[start + r]), x.row(order[start + r]) + x.cols, xb.row(r));
          std::copy(y.row(order[start + r]), y.row(order[start + r]) + y.cols, yb.row(r));
        }
        double loss = mse_train_backward(params, xb, yb, grads);
        adam_step(params, grads, adam, cfg.lr);
        loss_sum += loss * bsize;
      }
      double epoch_loss = loss_sum / n;
      result.log.push_back({l, epoch, epoch_loss, bootstrap});
      if (epoch_loss <= cfg.delta) break;
    }

    params.loop_index = l;
    frozen = params;
    if (checkpoint) checkpoint(params, l);
  }

  result.params = std::move(params);
  return result;
}

// ---------------------------------------------------------------------------
// Model files: "QRLC" | u16 version | u8 M | u16 d | u64 fingerprint |
// u16 dim-count | u32 dims | tensors as little-endian f64 in declaration
// order. Loop index and training provenance live in a plain-text sidecar.
// ---------------------------------------------------------------------------

namespace {
constexpr char kModelMagic[4] = {'Q', 'R', 'L', 'C'};
constexpr uint16_t kModelVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) fail(ErrCode::parse, "model file: truncated");
  return v;
}
}  // namespace

void save_model(const NetworkParams& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrCode::resource, "model file: cannot write " + path);
  out.write(kModelMagic, 4);
  put<uint16_t>(out, kModelVersion);
  put<uint8_t>(out, static_cast<uint8_t>(p.num_qubits));
  put<uint16_t>(out, static_cast<uint16_t>(p.shape.output));
  put<uint64_t>(out, p.fingerprint);

  std::vector<uint32_t> dims = {static_cast<uint32_t>(p.shape.input),
                                static_cast<uint32_t>(p.shape.hidden1),
                                static_cast<uint32_t>(p.shape.hidden2)};
  for (int k = 0; k < p.shape.blocks; ++k) {
    dims.push_back(static_cast<uint32_t>(p.shape.hidden2));
    dims.push_back(static_cast<uint32_t>(p.shape.hidden2));
  }
  dims.push_back(static_cast<uint32_t>(p.shape.output));
  put<uint16_t>(out, static_cast<uint16_t>(dims.size()));
  for (uint32_t d : dims) put<uint32_t>(out, d);

  for_each_tensor(const_cast<NetworkParams&>(p), [&](std::vector<double>& t, bool) {
    out.write(reinterpret_cast<const char*>(t.data()),
              static_cast<std::streamsize>(t.size() * sizeof(double)));
  });
  if (!out) fail(ErrCode::resource, "model file: write failed for " + path);

  std::ofstream meta(path + ".meta");
  if (meta) {
    meta << "loop = " << p.loop_index << "\n";
    meta << "fingerprint = " << p.fingerprint << "\n";
  }
}

NetworkParams load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrCode::parse, "model file: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kModelMagic, 4) != 0)
    fail(ErrCode::parse, "model file: bad magic in " + path);
  if (get<uint16_t>(in) != kModelVersion)
    fail(ErrCode::parse, "model file: unsupported version");

  int num_qubits = get<uint8_t>(in);
  int output = get<uint16_t>(in);
  uint64_t fingerprint = get<uint64_t>(in);
  int ndims = get<uint16_t>(in);
  if (ndims < 4 || (ndims - 4) % 2 != 0)
    fail(ErrCode::parse, "model file: malformed dimension list");
  std::vector<uint32_t> dims(ndims);
  for (int i = 0; i < ndims; ++i) dims[i] = get<uint32_t>(in);
  if (static_cast<int>(dims.back()) != output)
    fail(ErrCode::parse, "model file: output width disagrees with header");

  NetworkShape shape;
  shape.input = static_cast<int>(dims[0]);
  shape.hidden1 = static_cast<int>(dims[1]);
  shape.hidden2 = static_cast<int>(dims[2]);
  shape.blocks = (ndims - 4) / 2;
  shape.output = output;

  NetworkParams p = init_network(shape, num_qubits, fingerprint, /*seed=*/0);
  for_each_tensor(p, [&](std::vector<double>& t, bool) {
    in.read(reinterpret_cast<char*>(t.data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
    if (!in) fail(ErrCode::parse, "model file: truncated tensor data in " + path);
  });
  in.peek();
  if (!in.eof()) fail(ErrCode::parse, "model file: trailing bytes in " + path);

  std::ifstream meta(path + ".meta");
  if (meta) {
    std::string line;
    while (std::getline(meta, line)) {
      if (line.rfind("loop = ", 0) == 0) p.loop_index = std::stoi(line.substr(7));
    }
  }
  return p;
}

NetworkParams load_model_for_space(const std::string& path, uint64_t expected_fingerprint) {
  NetworkParams p = load_model(path);
  if (p.fingerprint != expected_fingerprint)
    fail(ErrCode::fingerprint, "model " + path + " was trained for action space " +
                                   std::to_string(p.fingerprint) +
                                   ", configured space is " +
                                   std::to_string(expected_fingerprint));
  return p;
}

}  // namespace qrlc
