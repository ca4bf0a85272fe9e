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

#include "core/gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "core/errors.hpp"

namespace qrlc {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

CMat rot_x(double theta) {
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return CMat::from_rows({{c, cplx(0, -s)}, {cplx(0, -s), c}});
}

CMat rot_y(double theta) {
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return CMat::from_rows({{c, -s}, {s, c}});
}

CMat rot_z(double theta) {
  return CMat::from_rows({{std::polar(1.0, -theta / 2), 0.0},
                          {0.0, std::polar(1.0, theta / 2)}});
}

// exp(-i pi/4 (cos(phi) X + sin(phi) Y))
CMat rot_phi_half(double phi) {
  double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
  return CMat::from_rows(
      {{c, cplx(0, -s) * std::polar(1.0, -phi)},
       {cplx(0, -s) * std::polar(1.0, phi), c}});
}

// Parses "P/k" / "-P/k" into R_P(+-pi/k); returns empty matrix if the name is
// not of that form.
CMat parse_fraction_rotation(const std::string& name) {
  std::string s = name;
  double sign = 1.0;
  if (!s.empty() && s[0] == '-') {
    sign = -1.0;
    s = s.substr(1);
  }
  if (s.size() < 3 || s[1] != '/') return CMat();
  char axis = s[0];
  for (size_t i = 2; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return CMat();
  int k = std::stoi(s.substr(2));
  if (k <= 0) return CMat();
  double theta = sign * kPi / k;
  switch (axis) {
    case 'X': return rot_x(theta);
    case 'Y': return rot_y(theta);
    case 'Z': return rot_z(theta);
    default: return CMat();
  }
}

}  // namespace

CMat gate_matrix(const std::string& name, std::optional<double> angle) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double inv_sqrt5 = 1.0 / std::sqrt(5.0);

  if (name == "RX" || name == "RY" || name == "RZ" || name == "RPHI") {
    if (!angle) fail(ErrCode::parse, "gate " + name + " requires an angle");
    if (name == "RX") return rot_x(*angle);
    if (name == "RY") return rot_y(*angle);
    if (name == "RZ") return rot_z(*angle);
    return rot_phi_half(*angle);
  }
  if (angle) fail(ErrCode::parse, "gate " + name + " takes no angle");

  if (name == "T") return CMat::from_rows({{1.0, 0.0}, {0.0, std::polar(1.0, kPi / 4)}});
  if (name == "Tdg") return CMat::from_rows({{1.0, 0.0}, {0.0, std::polar(1.0, -kPi / 4)}});
  if (name == "H")
    return CMat::from_rows({{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}});
  if (name == "CZ")
    return CMat::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}});
  if (name == "V1")
    return CMat::from_rows({{inv_sqrt5, cplx(0, 2 * inv_sqrt5)},
                            {cplx(0, 2 * inv_sqrt5), inv_sqrt5}});
  if (name == "V1dg")
    return CMat::from_rows({{inv_sqrt5, cplx(0, -2 * inv_sqrt5)},
                            {cplx(0, -2 * inv_sqrt5), inv_sqrt5}});
  if (name == "V2")
    return CMat::from_rows({{inv_sqrt5, 2 * inv_sqrt5}, {-2 * inv_sqrt5, inv_sqrt5}});
  if (name == "V2dg")
    return CMat::from_rows({{inv_sqrt5, -2 * inv_sqrt5}, {2 * inv_sqrt5, inv_sqrt5}});
  if (name == "V3")
    return CMat::from_rows({{cplx(inv_sqrt5, 2 * inv_sqrt5), 0.0},
                            {0.0, cplx(inv_sqrt5, -2 * inv_sqrt5)}});
  if (name == "V3dg")
    return CMat::from_rows({{cplx(inv_sqrt5, -2 * inv_sqrt5), 0.0},
                            {0.0, cplx(inv_sqrt5, 2 * inv_sqrt5)}});

  CMat frac = parse_fraction_rotation(name);
  if (!frac.empty()) return frac;

  fail(ErrCode::parse, "unknown gate name: " + name);
}

std::string NativeGate::display() const {
  if (!angle) return name;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s(%.10g)", name.c_str(), *angle);
  return buf;
}

NativeGate make_gate(const std::string& name, std::optional<double> angle) {
  NativeGate g;
  g.name = name;
  g.angle = angle;
  g.matrix = make_unitary(gate_matrix(name, angle));
  g.arity = g.matrix.dim() == 4 ? 2 : 1;
  return g;
}

std::vector<NativeGate> parse_gate_list(const std::string& text) {
  std::vector<NativeGate> gates;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) {
      gates.push_back(make_gate(tok));
    } else {
      std::string name = tok.substr(0, colon);
      double angle = 0.0;
      try {
        angle = std::stod(tok.substr(colon + 1));
      } catch (const std::exception&) {
        fail(ErrCode::parse, "bad gate angle in '" + tok + "'");
      }
      gates.push_back(make_gate(name, angle));
    }
  }
  return gates;
}

Topology Topology::chain(int m) {
  Topology t{m, {}};
  for (int q = 1; q < m; ++q) t.edges.emplace_back(q, q + 1);
  return t;
}

Topology Topology::full(int m) {
  Topology t{m, {}};
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) t.edges.emplace_back(a, b);
  return t;
}

void Topology::validate() const {
  if (num_qubits < 1 || num_qubits > 3)
    fail(ErrCode::parse, "topology: num_qubits must be 1..3");
  for (const auto& [a, b] : edges) {
    if (a < 1 || a > num_qubits || b < 1 || b > num_qubits)
      fail(ErrCode::parse, "topology: edge qubit out of range");
    if (a == b) fail(ErrCode::parse, "topology: self-loop edge");
  }
}

CMat lift_gate(const CMat& g, const std::vector<int>& qubits, int num_qubits) {
  int full_dim = 1 << num_qubits;
  int k = static_cast<int>(qubits.size());
  if ((k == 1 && g.dim() != 2) || (k == 2 && g.dim() != 4) || k < 1 || k > 2)
    fail(ErrCode::generic, "lift_gate: gate dimension does not match qubit count");
  for (int q : qubits)
    if (q < 1 || q > num_qubits) fail(ErrCode::generic, "lift_gate: qubit out of range");

  // Bit position of qubit q within the basis index (qubit 1 = MSB).
  auto bitpos = [&](int q) { return num_qubits - q; };

  CMat out(full_dim);
  for (int row = 0; row < full_dim; ++row) {
    // Sub-index of the acted qubits, first listed qubit as the high bit.
    int sub_r = 0;
    for (int i = 0; i < k; ++i)
      sub_r = (sub_r << 1) | ((row >> bitpos(qubits[i])) & 1);
    for (int sub_c = 0; sub_c < g.dim(); ++sub_c) {
      cplx v = g(sub_r, sub_c);
      if (v == cplx(0.0, 0.0)) continue;
      int col = row;
      for (int i = 0; i < k; ++i) {
        int bit = (sub_c >> (k - 1 - i)) & 1;
        int p = bitpos(qubits[i]);
        col = (col & ~(1 << p)) | (bit << p);
      }
      out.at(row, col) = v;
    }
  }
  return out;
}

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

ActionSpace ActionSpace::build(const std::vector<NativeGate>& gates, const Topology& topo) {
  topo.validate();
  if (gates.empty()) fail(ErrCode::parse, "action space: empty gate list");

  ActionSpace space;
  space.num_qubits_ = topo.num_qubits;
  space.topo_ = topo;

  for (const NativeGate& g : gates) {
    if (g.arity == 1) {
      for (int q = 1; q <= topo.num_qubits; ++q) {
        Action a;
        a.gate = g;
        a.qubits = {q};
        a.label = g.display() + "@" + std::to_string(q);
        a.matrix = lift_gate(g.matrix, a.qubits, topo.num_qubits);
        a.two_qubit = false;
        space.actions_.push_back(std::move(a));
      }
    } else {
      for (const auto& [qa, qb] : topo.edges) {
        Action a;
        a.gate = g;
        a.qubits = {qa, qb};
        a.label = g.display() + "@" + std::to_string(qa) + "-" + std::to_string(qb);
        a.matrix = lift_gate(g.matrix, a.qubits, topo.num_qubits);
        a.two_qubit = true;
        space.actions_.push_back(std::move(a));
      }
    }
  }

  int d = space.size();
  space.inverse_.assign(d, -1);
  for (int i = 0; i < d; ++i) {
    CMat inv = space.actions_[i].matrix.dagger();
    for (int j = 0; j < d; ++j) {
      if (space.actions_[j].matrix.approx_equal(inv, kUnitaryTol)) {
        space.inverse_[i] = j;
        break;
      }
    }
    if (space.inverse_[i] < 0)
      fail(ErrCode::parse, "action space not closed under inversion: no inverse for " +
                               space.actions_[i].label);
  }

  uint64_t h = 14695981039346656037ULL;
  for (const Action& a : space.actions_) {
    h = fnv1a64(a.label.data(), a.label.size(), h);
    h = fnv1a64("\n", 1, h);
  }
  space.fingerprint_ = h;
  return space;
}

}  // namespace qrlc
