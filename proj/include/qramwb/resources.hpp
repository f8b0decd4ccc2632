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

#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "qramwb/circuit.hpp"

namespace qramwb {

enum class ProfileName { UnitGate, SurfaceCode };

/// Per-kind cost rules. `strict_toffoli` costs every Toffoli-class gate at
/// 7 T instead of the 4-T AND convention.
struct ResourceProfile {
  ProfileName name = ProfileName::UnitGate;
  bool strict_toffoli = false;

  static ResourceProfile unit_gate() { return {ProfileName::UnitGate, false}; }
  static ResourceProfile surface_code() { return {ProfileName::SurfaceCode, false}; }
  std::string label() const;
};

struct GateCost {
  std::uint64_t gates = 0;
  std::uint64_t t_count = 0;
  std::uint64_t depth = 0;
};

GateCost gate_cost(const Gate& gate, const ResourceProfile& profile);

struct ResourceReport {
  std::uint64_t total_gates = 0;
  std::uint64_t t_count = 0;
  std::uint64_t depth = 0;
  std::uint64_t width = 0;
  std::uint64_t fanout_gates = 0;

  double fanout_gate_share() const {
    return total_gates == 0 ? 0.0 : static_cast<double>(fanout_gates) / total_gates;
  }
};

/// Sums per-gate costs; depth comes from ASAP re-packing of the gate
/// sequence with each gate occupying its operands for its depth cost.
ResourceReport count_resources(const Circuit& circuit,
                               const ResourceProfile& profile = ResourceProfile::unit_gate());

nlohmann::ordered_json report_to_json(const ResourceReport& report);

}  // namespace qramwb
