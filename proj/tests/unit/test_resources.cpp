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

#include <map>

#include "qramwb/builders.hpp"
#include "qramwb/resources.hpp"

using namespace qramwb;

TEST_CASE("per-gate costs") {
  Circuit c({{"q", 6}});
  const auto q = c.register_qubits("q");
  const auto unit = ResourceProfile::unit_gate();
  const auto sc = ResourceProfile::surface_code();
  auto strict = unit;
  strict.strict_toffoli = true;

  CHECK(gate_cost(Gate::x(q[0]), unit).t_count == 0);
  CHECK(gate_cost(Gate::toffoli({q[0]}, {q[1]}, q[2]), unit).t_count == 4);
  CHECK(gate_cost(Gate::toffoli({q[0]}, {q[1]}, q[2]), strict).t_count == 7);
  CHECK(gate_cost(Gate::and_compute({q[0]}, {q[1]}, q[2]), unit).t_count == 4);
  CHECK(gate_cost(Gate::and_uncompute({{q[0]}, {q[1]}}, q[2]), unit).t_count == 0);
  CHECK(gate_cost(Gate::cswap({q[0]}, q[1], q[2]), unit).t_count == 4);

  const auto mc = Gate::multi_cnot({{q[0]}, {q[1]}, {q[2]}, {q[3]}}, q[4]);
  CHECK(gate_cost(mc, unit).t_count == 12);
  CHECK(gate_cost(mc, strict).t_count == 35);
  CHECK(gate_cost(Gate::multi_cnot({{q[0]}}, q[4]), unit).t_count == 0);

  const auto fan = Gate::fanout({q[0]}, {q[1], q[2], q[3], q[4], q[5]});
  CHECK(gate_cost(fan, unit).gates == 5);
  CHECK(gate_cost(fan, unit).depth == 3);
  CHECK(gate_cost(fan, sc).gates == 1);
  CHECK(gate_cost(fan, sc).depth == 1);
  const auto par = Gate::parity_fanout(q[0], {q[1], q[2]});
  CHECK(gate_cost(par, sc).gates == 1 + 2 * 3);
  CHECK(gate_cost(par, sc).depth == 3);
}

TEST_CASE("report sums an independent tally") {
  const auto t = random_table(16, 2, 5);
  for (auto kind : {BuilderKind::Unary, BuilderKind::BucketBrigade, BuilderKind::SelectSwap}) {
    BuilderSpec s;
    s.kind = kind;
    s.page_log = 2;
    const auto r = build(s, t);
    std::uint64_t t_count = 0, gates = 0;
    for (const auto& g : r.circuit.gates()) {
      // Tally from gate kinds directly.
      switch (g.kind) {
        case GateKind::TOFFOLI:
        case GateKind::AND_COMPUTE:
        case GateKind::CSWAP:
          t_count += 4;
          break;
        case GateKind::MULTI_CNOT:
          if (g.num_controls() >= 2) t_count += 4 * (g.num_controls() - 1);
          break;
        default:
          break;
      }
      gates += g.kind == GateKind::FANOUT_CNOT ? g.num_targets() : 1;
    }
    const auto rep = count_resources(r.circuit);
    CHECK(rep.t_count == t_count);
    CHECK(rep.total_gates == gates);
    CHECK(rep.width == r.circuit.width());
    CHECK(rep.depth >= r.circuit.depth());
  }
}

TEST_CASE("surface-code fanout depth never exceeds unit-gate depth") {
  const auto t = random_table(64, 1, 3);
  BuilderSpec s;
  s.kind = BuilderKind::SelectSwap;
  s.page_log = 3;
  const auto r = build(s, t);
  const auto unit = count_resources(r.circuit, ResourceProfile::unit_gate());
  const auto sc = count_resources(r.circuit, ResourceProfile::surface_code());
  CHECK(sc.depth <= unit.depth);
  CHECK(sc.t_count == unit.t_count);
  CHECK(unit.fanout_gate_share() > 0.0);
}

TEST_CASE("recursive T-count is 4N-8") {
  for (std::uint32_t n = 4; n <= 1024; n *= 2) {
    BuilderSpec s;
    s.kind = BuilderKind::Recursive;
    const auto r = build(s, random_table(n, 1, n));
    CHECK(count_resources(r.circuit).t_count == 4 * n - 8);
  }
}

TEST_CASE("bucket-brigade routing ancillas and CSWAP closed form") {
  for (std::uint32_t n = 2; n <= 256; n *= 2) {
    for (std::uint32_t w : {1u, 3u}) {
      BuilderSpec s;
      s.kind = BuilderKind::BucketBrigade;
      const auto r = build(s, random_table(n, w, n + w));
      const auto& c = r.circuit;
      std::uint64_t routing = 0;
      for (const auto& reg : c.registers()) {
        if (reg.name == "c" || reg.name == "r") routing += reg.size;
      }
      CHECK(routing == 2 * (n - 1));
      CHECK(r.params["routing_ancillas"] == 2 * (n - 1));
      std::uint64_t cswaps = 0;
      for (const auto& g : c.gates()) cswaps += g.kind == GateKind::CSWAP;
      CHECK(cswaps == bucket_brigade_cswaps(address_bits(n), w));
    }
  }
}

TEST_CASE("select-swap T-count is minimised near sqrt N") {
  const auto t = random_table(256, 1, 17);
  std::map<std::uint64_t, std::uint32_t> by_cost;
  for (std::uint32_t l = 0; l <= 8; ++l) {
    BuilderSpec s;
    s.kind = BuilderKind::SelectSwap;
    s.page_log = l;
    by_cost.emplace(count_resources(build(s, t).circuit).t_count, l);
  }
  const auto best = by_cost.begin()->second;
  CHECK(best >= 3);
  CHECK(best <= 5);
}

TEST_CASE("report json keys") {
  ResourceReport r{10, 4, 3, 5, 2};
  const auto j = report_to_json(r);
  CHECK(j.dump() ==
        R"({"total_gates":10,"t_count":4,"depth":3,"width":5,"fanout_gates":2,"fanout_gate_share":0.2})");
}
