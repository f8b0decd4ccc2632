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

#include "qramwb/resources.hpp"

#include <algorithm>
#include <vector>

namespace qramwb {

namespace {

std::uint64_t ceil_log2(std::uint64_t x) {
  std::uint64_t r = 0;
  while ((std::uint64_t{1} << r) < x) ++r;
  return r;
}

}  // namespace

std::string ResourceProfile::label() const {
  std::string s = name == ProfileName::UnitGate ? "unit-gate" : "surface-code";
  if (strict_toffoli) s += "+strict";
  return s;
}

GateCost gate_cost(const Gate& gate, const ResourceProfile& profile) {
  const std::uint64_t toffoli_t = profile.strict_toffoli ? 7 : 4;
  GateCost c{1, 0, 1};
  switch (gate.kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::CNOT:
    case GateKind::AND_UNCOMPUTE:
    case GateKind::CLASSICAL_PHASE_FIXUP:
      break;
    case GateKind::TOFFOLI:
    case GateKind::AND_COMPUTE:
    case GateKind::CSWAP:
      c.t_count = toffoli_t;
      break;
    case GateKind::MULTI_CNOT: {
      const std::uint64_t m = gate.num_controls();
      if (m >= 2) c.t_count = profile.strict_toffoli ? 7 * (2 * m - 3) : 4 * (m - 1);
      break;
    }
    case GateKind::FANOUT_CNOT: {
      const std::uint64_t k = gate.num_targets();
      if (profile.name == ProfileName::UnitGate) {
        c.gates = k;
        c.depth = ceil_log2(k + 1);
      }
      if (gate.parity) {
        c.gates += 2 * (k + 1);
        c.depth += 2;
      }
      break;
    }
  }
  return c;
}

ResourceReport count_resources(const Circuit& circuit, const ResourceProfile& profile) {
  ResourceReport r;
  r.width = circuit.width();
  std::vector<std::uint64_t> ready(circuit.width(), 0);
  for (const auto& layer : circuit.layers()) {
    for (const auto& g : layer) {
      const GateCost c = gate_cost(g, profile);
      r.total_gates += c.gates;
      r.t_count += c.t_count;
      if (g.kind == GateKind::FANOUT_CNOT) {
        r.fanout_gates += g.parity ? c.gates - 2 * (g.num_targets() + 1) : c.gates;
      }
      std::uint64_t start = 0;
      for (const auto& q : g.operands) start = std::max(start, ready[circuit.flat_index(q)]);
      const std::uint64_t end = start + c.depth;
      for (const auto& q : g.operands) ready[circuit.flat_index(q)] = end;
      r.depth = std::max(r.depth, end);
    }
  }
  return r;
}

nlohmann::ordered_json report_to_json(const ResourceReport& report) {
  nlohmann::ordered_json j;
  j["total_gates"] = report.total_gates;
  j["t_count"] = report.t_count;
  j["depth"] = report.depth;
  j["width"] = report.width;
  j["fanout_gates"] = report.fanout_gates;
  j["fanout_gate_share"] = report.fanout_gate_share();
  return j;
}

}  // namespace qramwb
