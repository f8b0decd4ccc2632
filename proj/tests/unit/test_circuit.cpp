// Copyright 2026 The qramwb Authors
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

#include "qramwb/circuit.hpp"

using namespace qramwb;

namespace {

Circuit small() {
  Circuit c({{"a", 3}, {"b", 2}});
  const auto a0 = c.qubit("a", 0), a1 = c.qubit("a", 1), a2 = c.qubit("a", 2);
  const auto b0 = c.qubit("b", 0), b1 = c.qubit("b", 1);
  c.append(Gate::x(a0));
  c.append(Gate::cnot({a0, false}, b0));
  c.append(Gate::toffoli({a1, true}, {a2, false}, b1));
  c.append(Gate::cswap({a0, false}, a1, a2));
  c.append(Gate::fanout({b0, false}, {a1, a2}));
  c.append(Gate::and_compute({a0, false}, {a1, false}, b1));
  c.append(Gate::and_uncompute({{a0, false}, {a1, false}}, b1));
  return c;
}

}  // namespace

TEST_CASE("gate kind names round trip") {
  for (auto k : {GateKind::X, GateKind::CNOT, GateKind::TOFFOLI, GateKind::CSWAP,
                 GateKind::FANOUT_CNOT, GateKind::MULTI_CNOT, GateKind::H, GateKind::AND_COMPUTE,
                 GateKind::AND_UNCOMPUTE, GateKind::CLASSICAL_PHASE_FIXUP}) {
    CHECK(gate_kind_from_name(gate_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(gate_kind_from_name("NOPE"), CircuitError);
}

TEST_CASE("operand layout and arity") {
  Circuit c({{"q", 4}});
  const auto q0 = c.qubit("q", 0), q1 = c.qubit("q", 1), q2 = c.qubit("q", 2);
  const auto g = Gate::multi_cnot({{q0, false}, {q1, true}}, q2);
  CHECK(g.num_controls() == 2);
  CHECK(g.num_targets() == 1);
  CHECK(Gate::fanout({q0, false}, {q1, q2}).num_targets() == 2);
  CHECK(Gate::cswap({q0, false}, q1, q2).num_controls() == 1);
  CHECK_THROWS_AS(c.append(Gate::cnot({q0, false}, q0)), CircuitError);
  CHECK_THROWS_AS(c.qubit("q", 4), CircuitError);
  CHECK_THROWS_AS(c.qubit("missing", 0), CircuitError);
}

TEST_CASE("greedy packing gives ASAP depth") {
  Circuit c({{"q", 4}});
  const auto q = c.register_qubits("q");
  c.append(Gate::x(q[0]));
  c.append(Gate::x(q[1]));
  CHECK(c.depth() == 1);
  c.append(Gate::cnot({q[0], false}, q[1]));
  CHECK(c.depth() == 2);
  c.append(Gate::x(q[2]));
  CHECK(c.depth() == 2);
  CHECK(c.layers()[0].size() == 3);
  c.append(Gate::x(q[3]), Packing::NewLayer);
  CHECK(c.depth() == 3);
  CHECK(c.width() == 4);
  CHECK(c.gate_count() == 5);
  CHECK(validate(c).empty());
}

TEST_CASE("validate reports clashes and bad references") {
  Circuit c({{"q", 2}});
  const auto q0 = c.qubit("q", 0), q1 = c.qubit("q", 1);
  c.set_layers_unchecked({{Gate::x(q0), Gate::cnot({q1, false}, q0)}});
  auto errs = validate(c);
  REQUIRE(!errs.empty());
  CHECK(errs.front().find("layer overlap at layer 0") != std::string::npos);

  Circuit d({{"q", 2}});
  Gate bad = Gate::x(QubitRef{0, 5});
  d.set_layers_unchecked({{bad}});
  errs = validate(d);
  REQUIRE(!errs.empty());
  CHECK(errs.front().find("invalid qubit reference") != std::string::npos);
}

TEST_CASE("inverse reverses order and swaps AND roles") {
  const auto c = small();
  const auto inv = c.inverse();
  const auto fwd = c.gates();
  const auto back = inv.gates();
  REQUIRE(fwd.size() == back.size());
  CHECK(back.front().kind == GateKind::AND_COMPUTE);
  CHECK(back.back().kind == GateKind::X);
  CHECK(back[1].kind == GateKind::AND_UNCOMPUTE);
  CHECK(c.inverse().inverse().gates().size() == fwd.size());
  CHECK(validate(inv).empty());
}

TEST_CASE("json round trip preserves structure") {
  auto c = small();
  c.prepare_one(c.qubit("b", 1));
  const auto j = circuit_to_json(c);
  CHECK(j["schema"] == kCircuitSchemaVersion);
  const auto r = circuit_from_json(nlohmann::json::parse(j.dump()));
  CHECK(circuit_to_json(r).dump() == j.dump());
  CHECK(r.depth() == c.depth());
  CHECK(r.prepared().size() == 1);
}

TEST_CASE("json rejects malformed input") {
  auto j = nlohmann::json::parse(circuit_to_json(small()).dump());
  j["layers"][0][0]["operands"][0] = {0, 99};
  CHECK_THROWS(circuit_from_json(j));
  auto k = nlohmann::json::parse(circuit_to_json(small()).dump());
  k["layers"][0][0]["kind"] = "WARP";
  CHECK_THROWS(circuit_from_json(k));
}

TEST_CASE("without_gate drops exactly one gate") {
  const auto c = small();
  const auto d = c.without_gate(0, 0);
  CHECK(d.gate_count() + 1 == c.gate_count());
  CHECK_THROWS(c.without_gate(99, 0));
}

TEST_CASE("flat index is register major") {
  Circuit c({{"a", 3}, {"b", 2}});
  CHECK(c.flat_index(c.qubit("a", 2)) == 2);
  CHECK(c.flat_index(c.qubit("b", 0)) == 3);
  CHECK(c.register_offset(1) == 3);
}
