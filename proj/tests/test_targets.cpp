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
#include "core/targets.hpp"

using namespace qrlc;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("haar sampling") {
  for (int dim : {2, 4, 8})
    for (uint64_t s = 1; s <= 5; ++s) CHECK(is_unitary(haar_unitary(dim, s), 1e-10));

  // Determinism.
  CHECK(haar_unitary(4, 42).approx_equal(haar_unitary(4, 42), 0.0));

  // Distinct seeds give well-separated samples.
  for (uint64_t s = 0; s < 100; ++s)
    CHECK(fidelity_f1(haar_unitary(4, 1000 + s), haar_unitary(4, 2000 + s)) < 0.999);

  // First-moment check: E |Tr U|^2 = 1 for Haar samples.
  double acc = 0.0;
  const int n = 10000;
  for (int s = 0; s < n; ++s) {
    cplx t = trace(haar_unitary(4, 5000 + s));
    acc += std::norm(t);
  }
  CHECK(acc / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("kak template targets") {
  auto pool = parse_gate_list("X/2 -X/2 Y/2 -Y/2 T Tdg");

  CHECK_THROWS_AS(kak_template_target(pool, 0, 1, 2), Error);
  CHECK_THROWS_AS(kak_template_target(parse_gate_list("CZ"), 4, 1, 2), Error);
  CHECK_THROWS_AS(kak_template_target({}, 4, 1, 2), Error);

  for (uint64_t s = 1; s <= 10; ++s) {
    CHECK(is_unitary(kak_template_target(pool, 80, s, 2), 1e-10));
    CHECK(is_unitary(kak_template_target(pool, 20, s, 3), 1e-10));
  }
  CHECK(kak_template_target(pool, 12, 9, 2).approx_equal(kak_template_target(pool, 12, 9, 2), 0.0));

  // With a single-gate pool and one gate per layer, the target must equal
  // layer4 * CNOT * layer3 * CNOT * layer2 * CNOT * layer1 where each layer is
  // one T on either qubit. Enumerate all 16 qubit assignments.
  auto t_pool = parse_gate_list("T");
  CMat got = kak_template_target(t_pool, 4, 77, 2);
  CMat cnot = CMat::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  CMat t = gate_matrix("T");
  bool matched = false;
  for (int mask = 0; mask < 16 && !matched; ++mask) {
    CMat layers[4];
    for (int l = 0; l < 4; ++l)
      layers[l] = lift_gate(t, {(mask >> l) & 1 ? 2 : 1}, 2);
    CMat prod = layers[3] * cnot * layers[2] * cnot * layers[1] * cnot * layers[0];
    if (prod.approx_equal(got, 1e-12)) matched = true;
  }
  CHECK(matched);
}

TEST_CASE("rzz") {
  CHECK(rzz(0).approx_equal(CMat::identity(4), 1e-15));
  CHECK(std::abs(rzz(kPi / 2)(0, 0) - std::polar(1.0, -kPi / 4)) < 1e-15);
  CHECK(fidelity_f1(rzz(1.3) * rzz(-1.3), CMat::identity(4)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qft") {
  double s2 = 1.0 / std::sqrt(2.0);
  CHECK(qft(1).approx_equal(CMat::from_rows({{s2, s2}, {s2, -s2}}), 1e-15));

  StateVec f = apply(qft(3), StateVec::basis(8, 0));
  for (const cplx& a : f.amps) CHECK(std::norm(a) == doctest::Approx(0.125).epsilon(1e-12));

  // Uniform superposition maps to the |0..0> point mass.
  StateVec plus = resolve_input_state("+++", 3);
  StateVec out = apply(qft(3), plus);
  CHECK(std::abs(out.amps[0] - cplx(1.0, 0.0)) < 1e-12);

  for (int m : {1, 2, 3})
    CHECK((qft(m) * qft(m).dagger()).approx_equal(CMat::identity(1 << m), 1e-12));

  CMat r = bit_reversal_perm(3);
  CHECK(qft_bit_reversed(3).approx_equal(r * qft(3), 1e-15));
  CHECK((r * r).approx_equal(CMat::identity(8), 1e-15));
}

TEST_CASE("target spec parsing") {
  CHECK(resolve_target("id", 2, nullptr).approx_equal(CMat::identity(4), 0.0));
  CHECK(resolve_target("qft3", 3, nullptr).approx_equal(qft(3), 0.0));
  CHECK(resolve_target("qftrev3", 3, nullptr).approx_equal(qft_bit_reversed(3), 0.0));
  CHECK(resolve_target("rzz:1.5708", 2, nullptr).approx_equal(rzz(1.5708), 0.0));
  CHECK(resolve_target("haar:17", 2, nullptr).approx_equal(haar_unitary(4, 17), 0.0));

  auto space = ActionSpace::build(parse_gate_list("X/2 -X/2 Y/2 -Y/2 T Tdg CZ"),
                                  Topology::full(2));
  CHECK(is_unitary(resolve_target("kak:8:3", 2, &space), 1e-10));

  CHECK_THROWS_AS(resolve_target("qft3", 2, nullptr), Error);
  CHECK_THROWS_AS(resolve_target("nonsense", 2, nullptr), Error);
  CHECK_THROWS_AS(resolve_target("kak:8:3", 2, nullptr), Error);
  CHECK_THROWS_AS(resolve_target("rzz:abc", 2, nullptr), Error);
}

TEST_CASE("input state parsing") {
  StateVec s = resolve_input_state("+00", 3);
  CHECK(std::abs(s.amps[0] - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(s.amps[4] - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(s.norm() - 1.0) < 1e-12);

  StateVec h = resolve_input_state("haar:5", 2);
  CHECK(std::abs(h.norm() - 1.0) < 1e-10);

  CHECK_THROWS_AS(resolve_input_state("00", 3), Error);
  CHECK_THROWS_AS(resolve_input_state("0x0", 3), Error);
}
