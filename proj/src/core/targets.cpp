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

#include "core/targets.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace qrlc {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}  // namespace

CMat haar_unitary(int dim, uint64_t seed) {
  Rng rng(seed ^ 0x5161bd2f3a90cc01ULL);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // Columns of the Ginibre sample.
  std::vector<std::vector<cplx>> col(dim, std::vector<cplx>(dim));
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      col[c][r] = cplx(rng.normal(), rng.normal()) * inv_sqrt2;

  // Modified Gram-Schmidt, run twice for orthogonality well below 1e-10.
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (int r = 0; r < dim; ++r) proj += std::conj(col[k][r]) * col[j][r];
        for (int r = 0; r < dim; ++r) col[j][r] -= proj * col[k][r];
      }
      double nrm = 0.0;
      for (int r = 0; r < dim; ++r) nrm += std::norm(col[j][r]);
      nrm = std::sqrt(nrm);
      for (int r = 0; r < dim; ++r) col[j][r] /= nrm;
    }
  }

  CMat q(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) q.at(r, c) = col[c][r];

  // Rotate into SU(dim).
  cplx det = determinant(q);
  q *= std::polar(1.0, -std::arg(det) / dim);
  return q;
}

CMat kak_template_target(const std::vector<NativeGate>& pool, int n_single,
                         uint64_t seed, int num_qubits) {
  if (pool.empty()) fail(ErrCode::parse, "kak target: empty gate pool");
  for (const NativeGate& g : pool)
    if (g.arity != 1) fail(ErrCode::parse, "kak target: pool must be single-qubit gates");
  if (n_single < 1) fail(ErrCode::parse, "kak target: n_single must be >= 1");
  if (num_qubits != 2 && num_qubits != 3)
    fail(ErrCode::parse, "kak target: register must have 2 or 3 qubits");

  int qa = 1;
  int qb = (num_qubits == 2) ? 2 : 3;
  CMat cnot = CMat::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  CMat entangler = lift_gate(cnot, {qa, qb}, num_qubits);

  Rng rng(seed ^ 0x7b0c6a9d51e4f203ULL);
  int full_dim = 1 << num_qubits;
  std::vector<CMat> layer(4, CMat::identity(full_dim));
  for (int t = 0; t < n_single; ++t) {
    const NativeGate& g = pool[rng.uniform_int(static_cast<int>(pool.size()))];
    int q = rng.uniform_int(2) == 0 ? qa : qb;
    layer[t % 4] = lift_gate(g.matrix, {q}, num_qubits) * layer[t % 4];
  }

  // Circuit order: layer1, CNOT, layer2, CNOT, layer3, CNOT, layer4.
  return layer[3] * entangler * layer[2] * entangler * layer[1] * entangler * layer[0];
}

CMat rzz(double gamma) {
  cplx neg = std::polar(1.0, -gamma / 2);
  cplx pos = std::polar(1.0, gamma / 2);
  CMat m(4);
  m.at(0, 0) = neg;
  m.at(1, 1) = pos;
  m.at(2, 2) = pos;
  m.at(3, 3) = neg;
  return m;
}

CMat qft(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 3) fail(ErrCode::parse, "qft: 1..3 qubits supported");
  int n = 1 << num_qubits;
  double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CMat m(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      m.at(j, k) = std::polar(scale, 2.0 * kPi * ((j * k) % n) / n);
  return m;
}

CMat bit_reversal_perm(int num_qubits) {
  int n = 1 << num_qubits;
  CMat p(n);
  for (int j = 0; j < n; ++j) {
    int rev = 0;
    for (int b = 0; b < num_qubits; ++b)
      if (j & (1 << b)) rev |= 1 << (num_qubits - 1 - b);
    p.at(rev, j) = 1.0;
  }
  return p;
}

CMat qft_bit_reversed(int num_qubits) {
  return bit_reversal_perm(num_qubits) * qft(num_qubits);
}

namespace {

CMat read_explicit_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrCode::parse, "explicit target: cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    fail(ErrCode::parse, std::string("explicit target: bad JSON: ") + e.what());
  }
  int dim = doc.at("dim").get<int>();
  const auto& entries = doc.at("entries");
  if (static_cast<int>(entries.size()) != dim * dim)
    fail(ErrCode::parse, "explicit target: entry count does not match dim^2");
  CMat m(dim);
  for (int i = 0; i < dim * dim; ++i) {
    m.data()[i] = cplx(entries[i][0].get<double>(), entries[i][1].get<double>());
  }
  return make_unitary(std::move(m));
}

std::vector<NativeGate> single_qubit_pool(const ActionSpace& space) {
  std::vector<NativeGate> pool;
  for (const Action& a : space.actions()) {
    if (a.two_qubit || a.qubits[0] != 1) continue;  // one copy per gate
    pool.push_back(a.gate);
  }
  return pool;
}

}  // namespace

CMat resolve_target(const std::string& spec, int num_qubits, const ActionSpace* space) {
  auto want_dim = [&](int m) {
    if (m != num_qubits)
      fail(ErrCode::parse, "target '" + spec + "' needs a " + std::to_string(m) +
                               "-qubit register, configured for " + std::to_string(num_qubits));
  };

  if (spec == "id") return CMat::identity(1 << num_qubits);
  if (spec == "swap") {
    want_dim(2);
    return CMat::from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
  }
  if (spec.rfind("qftrev", 0) == 0 && spec.size() == 7) {
    int m = spec[6] - '0';
    want_dim(m);
    return qft_bit_reversed(m);
  }
  if (spec.rfind("qft", 0) == 0 && spec.size() == 4) {
    int m = spec[3] - '0';
    want_dim(m);
    return qft(m);
  }
  if (spec.rfind("rzz:", 0) == 0) {
    want_dim(2);
    try {
      return rzz(std::stod(spec.substr(4)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrCode::parse, "bad rzz angle in '" + spec + "'");
    }
  }
  if (spec.rfind("haar:", 0) == 0) {
    try {
      return haar_unitary(1 << num_qubits, std::stoull(spec.substr(5)));
    } catch (const std::exception&) {
      fail(ErrCode::parse, "bad haar seed in '" + spec + "'");
    }
  }
  if (spec.rfind("kak:", 0) == 0) {
    if (!space) fail(ErrCode::parse, "kak target requires a configured gate set");
    size_t second = spec.find(':', 4);
    if (second == std::string::npos) fail(ErrCode::parse, "kak target: expected kak:N:SEED");
    try {
      int n_single = std::stoi(spec.substr(4, second - 4));
      uint64_t seed = std::stoull(spec.substr(second + 1));
      return kak_template_target(single_qubit_pool(*space), n_single, seed, num_qubits);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrCode::parse, "bad kak target spec '" + spec + "'");
    }
  }
  if (spec.rfind("explicit:", 0) == 0) {
    CMat m = read_explicit_matrix(spec.substr(9));
    if (m.dim() != (1 << num_qubits))
      fail(ErrCode::parse, "explicit target dimension does not match register");
    return m;
  }
  fail(ErrCode::parse, "unrecognized target spec '" + spec + "'");
}

StateVec resolve_input_state(const std::string& spec, int num_qubits) {
  int dim = 1 << num_qubits;
  if (spec.rfind("haar:", 0) == 0) {
    uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(5));
    } catch (const std::exception&) {
      fail(ErrCode::parse, "bad haar input-state seed in '" + spec + "'");
    }
    return apply(haar_unitary(dim, seed), StateVec::basis(dim, 0));
  }
  if (static_cast<int>(spec.size()) != num_qubits)
    fail(ErrCode::parse, "input state '" + spec + "' does not match qubit count");

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  StateVec s;
  s.amps = {1.0};
  for (char t : spec) {
    std::vector<cplx> q;
    switch (t) {
      case '0': q = {1.0, 0.0}; break;
      case '1': q = {0.0, 1.0}; break;
      case '+': q = {inv_sqrt2, inv_sqrt2}; break;
      case '-': q = {inv_sqrt2, -inv_sqrt2}; break;
      default: fail(ErrCode::parse, std::string("bad input-state token '") + t + "'");
    }
    std::vector<cplx> next(s.amps.size() * 2);
    for (size_t i = 0; i < s.amps.size(); ++i) {
      next[2 * i] = s.amps[i] * q[0];
      next[2 * i + 1] = s.amps[i] * q[1];
    }
    s.amps = std::move(next);
  }
  return s;
}

}  // namespace qrlc
