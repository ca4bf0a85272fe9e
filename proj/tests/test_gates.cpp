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

#include "core/errors.hpp"
#include "core/gates.hpp"
#include "core/linalg.hpp"

using namespace qrlc;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<NativeGate> g21() { return parse_gate_list("X/2 -X/2 Y/2 -Y/2 T Tdg CZ"); }
std::vector<NativeGate> g33() { return parse_gate_list("V1 V1dg V2 V2dg V3 V3dg H CZ"); }
std::vector<NativeGate> g34() {
  return parse_gate_list("X/128 -X/128 Y/128 -Y/128 Z/128 -Z/128");
}
}  // namespace

TEST_CASE("gate matrices") {
  CMat t = gate_matrix("T");
  CHECK(std::abs(t(0, 0) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(t(1, 1) - std::polar(1.0, kPi / 4)) < 1e-15);

  CMat v1 = gate_matrix("V1");
  double s5 = 1.0 / std::sqrt(5.0);
  CHECK(std::abs(v1(0, 0) - cplx(s5, 0)) < 1e-15);
  CHECK(std::abs(v1(0, 1) - cplx(0, 2 * s5)) < 1e-15);
  CHECK(std::abs(v1(1, 0) - cplx(0, 2 * s5)) < 1e-15);

  // Half-angle convention: RX(pi) = -iX.
  CMat rx = gate_matrix("RX", kPi);
  CHECK(std::abs(rx(0, 1) - cplx(0, -1)) < 1e-15);
  CHECK(std::abs(rx(1, 0) - cplx(0, -1)) < 1e-15);
  CHECK(std::abs(rx(0, 0)) < 1e-15);

  // "X/2" is shorthand for RX(pi/2).
  CHECK(gate_matrix("X/2").approx_equal(gate_matrix("RX", kPi / 2), 1e-15));
  CHECK(gate_matrix("-Z/128").approx_equal(gate_matrix("RZ", -kPi / 128), 1e-15));

  // RPHI(0) is X/2; RPHI(pi/2) is Y/2.
  CHECK(gate_matrix("RPHI", 0.0).approx_equal(gate_matrix("X/2"), 1e-15));
  CHECK(gate_matrix("RPHI", kPi / 2).approx_equal(gate_matrix("Y/2"), 1e-15));

  CHECK_THROWS_AS(gate_matrix("BOGUS"), Error);
  CHECK_THROWS_AS(gate_matrix("RZ"), Error);  // missing angle
  CHECK_THROWS_AS(gate_matrix("T", 0.5), Error);

  for (const char* name : {"X/2", "-X/2", "Y/2", "-Y/2", "T", "Tdg", "H", "CZ",
                           "V1", "V1dg", "V2", "V2dg", "V3", "V3dg"})
    CHECK(is_unitary(gate_matrix(name), 1e-10));
}

TEST_CASE("action space cardinalities") {
  auto a21 = ActionSpace::build(g21(), Topology::full(2));
  CHECK(a21.size() == 13);

  auto a31 = ActionSpace::build(g21(), Topology::chain(3));
  CHECK(a31.size() == 20);

  auto a33 = ActionSpace::build(g33(), Topology::full(3));
  CHECK(a33.size() == 24);

  auto a34 = ActionSpace::build(g34(), Topology::none(3));
  CHECK(a34.size() == 18);

  for (const ActionSpace* s : {&a21, &a31, &a33, &a34})
    for (const Action& a : s->actions()) CHECK(is_unitary(a.matrix, 1e-10));
}

TEST_CASE("non-adjacent CZ lift matches direct assembly") {
  auto a33 = ActionSpace::build(g33(), Topology::full(3));
  const Action* cz13 = nullptr;
  for (const Action& a : a33.actions())
    if (a.label == "CZ@1-3") cz13 = &a;
  REQUIRE(cz13 != nullptr);

  // |0><0| (x) I4 + |1><1| (x) I2 (x) Z, assembled entry by entry.
  CMat direct(8);
  for (int i = 0; i < 8; ++i) {
    bool q1 = i & 4, q3 = i & 1;
    direct.at(i, i) = (q1 && q3) ? -1.0 : 1.0;
  }
  CHECK(cz13->matrix.approx_equal(direct, 1e-15));
}

TEST_CASE("inverse index") {
  auto a21 = ActionSpace::build(g21(), Topology::full(2));

  int cz = -1, t1 = -1, tdg1 = -1;
  for (int i = 0; i < a21.size(); ++i) {
    const std::string& l = a21.action(i).label;
    if (l == "CZ@1-2") cz = i;
    if (l == "T@1") t1 = i;
    if (l == "Tdg@1") tdg1 = i;
  }
  REQUIRE(cz >= 0);
  CHECK(a21.inverse_index(cz) == cz);
  CHECK(a21.inverse_index(t1) == tdg1);

  for (int i = 0; i < a21.size(); ++i) {
    CHECK(a21.inverse_index(a21.inverse_index(i)) == i);
    CHECK(a21.action(a21.inverse_index(i))
              .matrix.approx_equal(a21.action(i).matrix.dagger(), 1e-10));
  }
}

TEST_CASE("closure failure names the offending action") {
  auto gates = parse_gate_list("T");  // no Tdg
  try {
    ActionSpace::build(gates, Topology::none(1));
    FAIL("expected closure error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("T@1") != std::string::npos);
  }
}

TEST_CASE("deterministic ordering and fingerprint") {
  auto a = ActionSpace::build(g21(), Topology::full(2));
  auto b = ActionSpace::build(g21(), Topology::full(2));
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.action(0).label == "X/2@1");
  CHECK(a.action(1).label == "X/2@2");
  CHECK(a.action(12).label == "CZ@1-2");

  auto c = ActionSpace::build(parse_gate_list("Y/2 -Y/2 X/2 -X/2 T Tdg CZ"), Topology::full(2));
  CHECK(c.fingerprint() != a.fingerprint());
}

TEST_CASE("closed-form action count") {
  // |actions| = #1q gates * M + #2q gates * |edges|
  auto gates = g21();
  for (int m : {2, 3}) {
    auto topo = Topology::chain(m);
    auto space = ActionSpace::build(gates, topo);
    CHECK(space.size() == 6 * m + 1 * static_cast<int>(topo.edges.size()));
  }
}
