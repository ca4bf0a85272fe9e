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

#include <cmath>
#include <filesystem>

#include "core/dataset.hpp"
#include "core/errors.hpp"
#include "core/qnet.hpp"
#include "core/rng.hpp"
#include "core/targets.hpp"

using namespace qrlc;

namespace {

ActionSpace space21() {
  return ActionSpace::build(parse_gate_list("X/2 -X/2 Y/2 -Y/2 T Tdg CZ"), Topology::full(2));
}
ActionSpace space_x2() {
  return ActionSpace::build(parse_gate_list("X/2 -X/2"), Topology::none(1));
}

NetworkParams tiny_net(int input, int output, uint64_t seed) {
  NetworkShape shape{input, 16, 12, 2, output};
  return init_network(shape, 1, 42, seed);
}

RMat random_mat(int r, int c, uint64_t seed, double scale = 1.0) {
  RMat m(r, c);
  Rng rng(seed);
  for (double& v : m.a) v = scale * rng.normal();
  return m;
}

}  // namespace

TEST_CASE("matmul against naive reference") {
  Rng rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    int m = 1 + rng.uniform_int(7), k = 1 + rng.uniform_int(7), n = 1 + rng.uniform_int(7);
    RMat a = random_mat(m, k, 100 + trial);
    RMat b = random_mat(k, n, 200 + trial);
    RMat at(k, m), bt(n, k);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < k; ++j) at.at(j, i) = a.at(i, j);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) bt.at(j, i) = b.at(i, j);

    RMat ref(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int t = 0; t < k; ++t) s += a.at(i, t) * b.at(t, j);
        ref.at(i, j) = s;
      }

    RMat c1, c2, c3, c4;
    matmul(a, false, b, false, c1);
    matmul(at, true, b, false, c2);
    matmul(a, false, bt, true, c3);
    matmul(at, true, bt, true, c4);
    for (const RMat* c : {&c1, &c2, &c3, &c4})
      for (int i = 0; i < m * n; ++i) CHECK(c->a[i] == doctest::Approx(ref.a[i]).epsilon(1e-12));
  }
}

TEST_CASE("percept encoding") {
  std::vector<double> f = encode_percept(CMat::identity(4));
  REQUIRE(f.size() == 32);
  for (int i = 0; i < 32; ++i) {
    bool diag = i < 16 && i % 5 == 0;
    CHECK(f[i] == doctest::Approx(diag ? 1.0 : 0.0));
  }

  CMat u = haar_unitary(4, 5);
  CMat shifted = std::polar(1.0, 1.234) * u;
  std::vector<double> a = encode_percept(u), b = encode_percept(shifted);
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-10));

  CHECK(encoded_width(3) == 128);
  CHECK(encode_percept(haar_unitary(8, 1)).size() == 128);
}

TEST_CASE("forward basics") {
  NetworkParams p = tiny_net(8, 4, 7);
  // Zeroed output head forces a zero q-vector.
  for (double& v : p.lin.back().w.a) v = 0;
  for (double& v : p.lin.back().b) v = 0;
  RMat x = random_mat(3, 8, 11);
  RMat q = forward_eval(p, x);
  for (double v : q.a) CHECK(v == 0.0);

  // Eval-mode output of a row does not depend on its batch neighbours.
  NetworkParams p2 = tiny_net(8, 4, 9);
  RMat batch = random_mat(5, 8, 13);
  RMat full = forward_eval(p2, batch);
  for (int r = 0; r < 5; ++r) {
    RMat one(1, 8);
    std::copy(batch.row(r), batch.row(r) + 8, one.row(0));
    RMat out = forward_eval(p2, one);
    for (int c = 0; c < 4; ++c) CHECK(out.at(0, c) == doctest::Approx(full.at(r, c)).epsilon(1e-14));
  }
}

TEST_CASE("backprop matches central finite differences") {
  NetworkParams p = tiny_net(8, 4, 17);
  RMat x = random_mat(6, 8, 19);
  RMat y = random_mat(6, 4, 23, 0.5);

  Gradients grads = make_gradients(p);
  mse_train_backward(p, x, y, grads);

  // Sample coordinates across every trainable tensor kind. A coordinate whose
  // perturbation pushes some pre-activation across the leaky-ReLU kink shows
  // an O(h) finite-difference artifact; retrying with a smaller step shrinks
  // that artifact but would not shrink a genuine gradient bug.
  // Pass when |analytic - fd| <= atol + rtol * max(|analytic|, |fd|): the
  // absolute floor absorbs central-difference rounding noise on near-zero
  // gradients, the relative part enforces the 1e-4 agreement everywhere else.
  auto fd_agrees = [&](std::vector<double>& t, size_t idx, double an, double h) {
    double saved = t[idx];
    t[idx] = saved + h;
    double lp = loss_exact(p, x, y);
    t[idx] = saved - h;
    double lm = loss_exact(p, x, y);
    t[idx] = saved;
    double fd = (lp - lm) / (2 * h);
    return std::abs(an - fd) <= 1e-8 + 1e-4 * std::max(std::abs(an), std::abs(fd));
  };
  Rng pick(29);
  size_t slot = 0;
  int tested = 0;
  for_each_tensor(p, [&](std::vector<double>& t, bool trainable) {
    if (!trainable) return;
    for (int rep = 0; rep < 2; ++rep) {
      size_t idx = static_cast<size_t>(pick.uniform_int(static_cast<int>(t.size())));
      double an = grads.g[slot][idx];
      bool ok = fd_agrees(t, idx, an, 1e-5);
      // a leaky-ReLU kink inside the step shows as an O(h) artifact
      if (!ok) ok = fd_agrees(t, idx, an, 1e-7);
      CHECK(ok);
      ++tested;
    }
    ++slot;
  });
  CHECK(tested >= 20);
}

TEST_CASE("loss_exact anchors") {
  NetworkParams p = tiny_net(8, 2, 31);
  for (double& v : p.lin.back().w.a) v = 0;
  for (double& v : p.lin.back().b) v = 0;
  RMat x = random_mat(1, 8, 37);

  RMat zero(1, 2);
  CHECK(loss_exact(p, x, zero) == doctest::Approx(0.0));

  RMat minus1(1, 2);
  minus1.a = {-1.0, -1.0};
  CHECK(loss_exact(p, x, minus1) == doctest::Approx(1.0));

  // Quadratic scaling of the residuals.
  RMat minus3(1, 2);
  minus3.a = {-3.0, -3.0};
  CHECK(loss_exact(p, x, minus3) == doctest::Approx(9.0));
}

TEST_CASE("bootstrap targets") {
  auto space = space_x2();

  // Frozen net outputting the constant -c: non-goal children get -c - 1.
  NetworkParams frozen = tiny_net(8, 2, 41);
  for (double& v : frozen.lin.back().w.a) v = 0;
  frozen.lin.back().b = {-2.5, -2.5};

  // Percept at distance 1; one action returns it to the identity.
  CMat w = space.action(1).matrix;  // -X/2 state
  std::vector<const CMat*> percepts = {&w};
  RMat y = bootstrap_targets(frozen, percepts, space);
  REQUIRE(y.rows == 1);
  // action 0 (X/2) * (-X/2) = identity -> anchored at 0
  CHECK(y.at(0, 0) == 0.0);
  CHECK(y.at(0, 1) == doctest::Approx(-3.5));
}

TEST_CASE("bootstrap loss vanishes at the tabular fixed point") {
  auto space = space_x2();
  // Closure states and exact per-action child values.
  CMat i2 = CMat::identity(2);
  CMat x_half = space.action(0).matrix;
  CMat x_neg = space.action(1).matrix;
  CMat x_full = x_half * x_half;
  std::vector<CMat> states = {i2, x_half, x_neg, x_full};
  auto dist = [&](const CMat& u) {
    if (fidelity_f1(u, i2) > 1 - 1e-8) return 0;
    if (fidelity_f1(u, x_full) > 1 - 1e-8) return 2;
    return 1;
  };

  RMat x(4, 8), y(4, 2);
  for (int i = 0; i < 4; ++i) {
    std::vector<double> f = encode_percept(states[i]);
    std::copy(f.begin(), f.end(), x.row(i));
    for (int j = 0; j < 2; ++j)
      y.at(i, j) = -dist(space.action(j).matrix * states[i]);
  }

  NetworkParams p = tiny_net(8, 2, 43);
  AdamState adam = make_adam(p);
  Gradients grads = make_gradients(p);
  double loss = 1.0;
  for (int step = 0; step < 4000 && loss > 1e-9; ++step) {
    loss = mse_train_backward(p, x, y, grads);
    adam_step(p, grads, adam, 1e-3);
  }
  REQUIRE(loss <= 1e-6);

  std::vector<const CMat*> percepts;
  for (const CMat& s : states) percepts.push_back(&s);
  CHECK(loss_bootstrap(p, p, percepts, space) <= 1e-4);
}

TEST_CASE("adam") {
  // Zero gradients leave parameters untouched.
  NetworkParams p = tiny_net(8, 2, 47);
  NetworkParams q = p;
  AdamState sp = make_adam(p);
  Gradients zero = make_gradients(p);
  adam_step(p, zero, sp, 1e-3);
  bool same = true;
  {
    std::vector<std::vector<double>*> pa, qa;
    for_each_tensor(p, [&](std::vector<double>& t, bool) { pa.push_back(&t); });
    for_each_tensor(q, [&](std::vector<double>& t, bool) { qa.push_back(&t); });
    for (size_t i = 0; i < pa.size(); ++i)
      if (*pa[i] != *qa[i]) same = false;
  }
  CHECK(same);

  // First-step magnitude is lr per coordinate (within 1%).
  NetworkParams r = tiny_net(8, 2, 53);
  NetworkParams r0 = r;
  AdamState sr = make_adam(r);
  Gradients g = make_gradients(r);
  Rng rng(59);
  for (std::vector<double>& t : g.g)
    for (double& v : t) v = rng.normal() + (v >= 0 ? 0.3 : -0.3);
  adam_step(r, g, sr, 1e-3);
  std::vector<std::vector<double>*> ra, r0a;
  for_each_tensor(r, [&](std::vector<double>& t, bool tr) { if (tr) ra.push_back(&t); });
  for_each_tensor(r0, [&](std::vector<double>& t, bool tr) { if (tr) r0a.push_back(&t); });
  for (size_t i = 0; i < ra.size(); ++i)
    for (size_t j = 0; j < ra[i]->size(); ++j) {
      double step = (*r0a[i])[j] - (*ra[i])[j];
      double expect = 1e-3 * (g.g[i][j] >= 0 ? 1.0 : -1.0);
      if (std::abs(g.g[i][j]) > 1e-3)  // away from the eps regularizer
        CHECK(step == doctest::Approx(expect).epsilon(0.01));
    }

  // Non-finite gradient is rejected.
  g.g[0][0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(adam_step(r, g, sr, 1e-3), Error);
}

TEST_CASE("training: one loop of constant labels") {
  auto space = space21();
  GenConfig gen{1, 1, 10, 3, 0.002, size_t(1) << 30};
  TrainingSet ts = generate_training_set(space, gen);

  TrainConfig cfg;
  cfg.shape = NetworkShape{0, 64, 48, 1, 0};
  cfg.exact_horizon = 1;
  cfg.seed = 5;
  cfg.lr = 0.05;  // one percept, constant targets; cover the distance quickly
  TrainResult result = train(space, ts, cfg);

  REQUIRE_FALSE(result.log.empty());
  CHECK(result.log.back().loss <= cfg.delta);
  for (const TrainLogEntry& e : result.log) {
    CHECK(e.loop == 1);
    CHECK(e.epoch <= 100);
    CHECK_FALSE(e.bootstrap);
  }

  // Training-mode predictions for the start percept sit near the -1 labels.
  RMat x(1, 32), y(1, space.size());
  std::vector<double> f = encode_percept(ts.start[0].unitary);
  std::copy(f.begin(), f.end(), x.row(0));
  for (int j = 0; j < space.size(); ++j) y.at(0, j) = -1.0;
  CHECK(loss_exact(result.params, x, y) <= cfg.delta);
}

TEST_CASE("model save/load round trip") {
  NetworkParams p = tiny_net(8, 4, 61);
  p.loop_index = 3;
  std::string path = (std::filesystem::temp_directory_path() / "qrlc_model_test.qrlc").string();
  save_model(p, path);
  NetworkParams back = load_model(path);

  CHECK(back.fingerprint == p.fingerprint);
  CHECK(back.loop_index == 3);
  RMat x = random_mat(4, 8, 67);
  RMat a = forward_eval(p, x), b = forward_eval(back, x);
  for (size_t i = 0; i < a.a.size(); ++i) CHECK(a.a[i] == b.a[i]);  // bit-exact

  CHECK_THROWS_AS(load_model_for_space(path, p.fingerprint + 1), Error);
  try {
    load_model_for_space(path, p.fingerprint + 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::fingerprint);
    // Both fingerprints appear in the message.
    std::string msg = e.what();
    CHECK(msg.find(std::to_string(p.fingerprint)) != std::string::npos);
    CHECK(msg.find(std::to_string(p.fingerprint + 1)) != std::string::npos);
  }

  // Truncation is rejected without producing a partial model.
  std::filesystem::resize_file(path, std::filesystem::file_size(path) / 2);
  CHECK_THROWS_AS(load_model(path), Error);
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".meta");
}
