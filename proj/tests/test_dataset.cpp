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
#include <set>

#include "core/dataset.hpp"
#include "core/dedup.hpp"
#include "core/errors.hpp"
#include "core/gates.hpp"
#include "core/targets.hpp"

using namespace qrlc;

namespace {
constexpr double kPi = 3.14159265358979323846;

ActionSpace space21() {
  return ActionSpace::build(parse_gate_list("X/2 -X/2 Y/2 -Y/2 T Tdg CZ"), Topology::full(2));
}
ActionSpace space_x2() {
  return ActionSpace::build(parse_gate_list("X/2 -X/2"), Topology::none(1));
}
ActionSpace space_xy() {
  return ActionSpace::build(parse_gate_list("X/2 -X/2 Y/2 -Y/2"), Topology::none(1));
}
}  // namespace

TEST_CASE("perturbed identity") {
  Rng rng(7);
  CHECK(perturbed_identity_scaled(2, 0.0, rng).approx_equal(CMat::identity(4), 0.0));

  for (uint64_t seed = 1; seed <= 20; ++seed) {
    CMat p = perturbed_identity(3, seed);
    CHECK(is_unitary(p, 1e-10));
    CHECK(1.0 - fidelity_f1(CMat::identity(8), p) < 1e-4);
  }
  CHECK(perturbed_identity(2, 5).approx_equal(perturbed_identity(2, 5), 0.0));
  CHECK_FALSE(perturbed_identity(2, 5).approx_equal(perturbed_identity(2, 6), 1e-8));
}

TEST_CASE("loop 1 from identity") {
  auto space = space21();
  GenConfig cfg{1, 1, 10, 3, 0.002, size_t(1) << 30};
  TrainingSet ts = generate_training_set(space, cfg);
  REQUIRE(ts.loops.size() == 1);
  CHECK(static_cast<int>(ts.loop(1).fresh.size()) == space.size());
  // Child labels for the single start parent: all -1.
  REQUIRE(ts.loop(1).child_values.size() == static_cast<size_t>(space.size()));
  for (int8_t v : ts.loop(1).child_values) CHECK(v == -1);
  for (const Percept& p : ts.loop(1).fresh) {
    CHECK(p.value == -1);
    CHECK(p.seq.size() == 1);
    CHECK(is_unitary(p.unitary, 1e-8));
  }
}

TEST_CASE("loop 2 labels are 0 or -2") {
  auto space = space21();
  GenConfig cfg{2, 2, 10, 11, 0.002, size_t(1) << 30};
  TrainingSet ts = generate_training_set(space, cfg);
  const LoopData& l2 = ts.loop(2);
  REQUIRE(l2.child_values.size() == static_cast<size_t>(space.size() * space.size()));
  for (int8_t v : l2.child_values) CHECK((v == 0 || v == -2));
}

TEST_CASE("x-rotation toy set: loop-2 closure") {
  auto space = space_x2();
  GenConfig cfg{3, 3, 10, 2, 0.0, size_t(1) << 30};
  TrainingSet ts = generate_training_set(space, cfg);

  // Loop 2 discovers exactly one fresh state, the full X rotation; everything
  // else folds back to the start.
  REQUIRE(ts.loop(2).fresh.size() == 1);
  CMat rx_pi = gate_matrix("RX", kPi);
  CHECK(fidelity_f1(ts.loop(2).fresh[0].unitary, rx_pi) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ts.loop(2).fresh[0].value == -2);
  for (size_t i = 0; i < ts.loop(2).child_values.size(); ++i) {
    int v = ts.loop(2).child_values[i];
    CHECK((v == 0 || v == -2));
  }
  // Loop 3 finds nothing new: the closure has 4 states.
  CHECK(ts.loop(3).fresh.empty());
  CHECK(ts.total_percepts() == 3);
}

TEST_CASE("distance <= 2 census on the xy toy set") {
  // Independent oracle: brute-force products with pairwise-fidelity dedup.
  auto space = space_xy();
  std::vector<CMat> found;
  CMat identity = CMat::identity(2);
  auto add = [&](const CMat& m) {
    if (fidelity_f1(m, identity) > 1 - 1e-8) return;
    for (const CMat& f : found)
      if (fidelity_f1(f, m) > 1 - 1e-8) return;
    found.push_back(m);
  };
  for (int a = 0; a < space.size(); ++a) add(space.action(a).matrix);
  for (int a = 0; a < space.size(); ++a)
    for (int b = 0; b < space.size(); ++b)
      add(space.action(a).matrix * space.action(b).matrix);
  CHECK(found.size() == 14);

  GenConfig cfg{2, 2, 10, 5, 0.0, size_t(1) << 30};
  TrainingSet ts = generate_training_set(space, cfg);
  CHECK(ts.loop(1).fresh.size() + ts.loop(2).fresh.size() == found.size());
}

TEST_CASE("sampled regime") {
  auto space = space21();
  GenConfig cfg{4, 2, 50, 9, 0.002, size_t(1) << 30};
  TrainingSet ts = generate_training_set(space, cfg);
  CHECK(ts.loop(3).fresh.size() == 50);
  CHECK(ts.loop(3).child_values.empty());
  for (const Percept& p : ts.loop(3).fresh) {
    CHECK(p.value == -3);
    CHECK(p.seq.size() == 3);
  }
  // No stored value ever exceeds the loop count.
  for (const LoopData& l : ts.loops)
    for (const Percept& p : l.fresh) CHECK(p.value >= -cfg.loops);

  GenConfig bad = cfg;
  bad.budget = 0;
  CHECK_THROWS_AS(generate_training_set(space, bad), Error);
}

TEST_CASE("dedup key soundness over generated percepts") {
  auto space = space21();
  GenConfig cfg{3, 3, 10, 21, 0.002, size_t(1) << 30};
  TrainingSet ts = generate_training_set(space, cfg);
  std::vector<const Percept*> all;
  for (const LoopData& l : ts.loops)
    for (const Percept& p : l.fresh) all.push_back(&p);
  int same_key = 0;
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j) {
      if (dedup_key(all[i]->unitary) == dedup_key(all[j]->unitary)) {
        ++same_key;
        CHECK(fidelity_f1(all[i]->unitary, all[j]->unitary) >= 1 - 1e-8);
      }
    }
  CHECK(same_key == 0);  // exhaustive loops store each canonical form once
}

TEST_CASE("memory budget error names the loop") {
  auto space = space21();
  GenConfig cfg{3, 3, 10, 2, 0.002, 4096};
  try {
    generate_training_set(space, cfg);
    FAIL("expected resource error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::resource);
    CHECK(std::string(e.what()).find("loop") != std::string::npos);
  }
}

TEST_CASE("shard round trip") {
  auto space = space21();
  GenConfig cfg{3, 2, 25, 13, 0.002, size_t(1) << 30};
  TrainingSet ts = generate_training_set(space, cfg);

  std::string dir = std::filesystem::temp_directory_path() / "qrlc_shards_test";
  std::filesystem::remove_all(dir);
  save_shards(ts, dir);
  TrainingSet back = load_shards(dir, space, cfg);

  REQUIRE(back.loops.size() == ts.loops.size());
  CHECK(back.start[0].unitary.approx_equal(ts.start[0].unitary, 0.0));
  for (size_t l = 0; l < ts.loops.size(); ++l) {
    REQUIRE(back.loops[l].fresh.size() == ts.loops[l].fresh.size());
    for (size_t i = 0; i < ts.loops[l].fresh.size(); ++i) {
      CHECK(back.loops[l].fresh[i].value == ts.loops[l].fresh[i].value);
      CHECK(back.loops[l].fresh[i].seq == ts.loops[l].fresh[i].seq);
      CHECK(back.loops[l].fresh[i].unitary.approx_equal(ts.loops[l].fresh[i].unitary, 0.0));
    }
    CHECK(back.loops[l].child_values == ts.loops[l].child_values);
  }
  std::filesystem::remove_all(dir);
}
