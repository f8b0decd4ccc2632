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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qramwb {

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GateKind : std::uint8_t {
  X,
  CNOT,
  TOFFOLI,
  CSWAP,
  FANOUT_CNOT,
  MULTI_CNOT,
  H,
  AND_COMPUTE,
  AND_UNCOMPUTE,
  CLASSICAL_PHASE_FIXUP,
};

std::string_view gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

/// Qubit handle: register id (position in the circuit's register list) and
/// index inside that register.
struct QubitRef {
  std::uint32_t reg = 0;
  std::uint32_t index = 0;

  friend bool operator==(const QubitRef&, const QubitRef&) = default;
};

/// A polarity-tagged control.
struct Control {
  QubitRef qubit;
  bool negated = false;
};

/// One gate record.
///
/// Operand layout by kind (controls always come first):
///   X                     [target]
///   CNOT                  [control, target]
///   TOFFOLI, AND_COMPUTE  [c0, c1, target]
///   AND_UNCOMPUTE         [c0 .. c_{m-1}, target]   (m >= 1)
///   MULTI_CNOT            [c0 .. c_{m-1}, target]   (m >= 1)
///   CSWAP                 [control, a, b]
///   FANOUT_CNOT           [control, t0 .. t_{k-1}]  (k >= 1)
///   H                     [target]
///   CLASSICAL_PHASE_FIXUP [q0 .. q_{k-1}]           (k >= 1)
///
/// `negated` holds one polarity flag per control. A FANOUT_CNOT with
/// `parity` set is the Hadamard-conjugated form: it XORs the parity of its
/// targets into the control qubit.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<QubitRef> operands;
  std::vector<bool> negated;
  bool parity = false;

  std::size_t num_controls() const;
  std::size_t num_targets() const { return operands.size() - num_controls(); }

  static Gate x(QubitRef t);
  static Gate h(QubitRef t);
  static Gate cnot(Control c, QubitRef t);
  static Gate toffoli(Control c0, Control c1, QubitRef t);
  static Gate cswap(Control c, QubitRef a, QubitRef b);
  static Gate fanout(Control c, std::vector<QubitRef> targets);
  static Gate parity_fanout(QubitRef accumulator, std::vector<QubitRef> sources);
  static Gate multi_cnot(const std::vector<Control>& controls, QubitRef t);
  static Gate and_compute(Control c0, Control c1, QubitRef t);
  static Gate and_uncompute(const std::vector<Control>& controls, QubitRef t);
  static Gate phase_fixup(std::vector<QubitRef> qubits);
};

struct Register {
  std::string name;
  std::uint32_t size = 0;
};

enum class Packing { Greedy, NewLayer };

/// Layered circuit over named registers.
///
/// Every layer holds gates on pairwise-disjoint qubits, so the number of
/// layers is the circuit depth when all gates have unit duration.
/// `prepared` lists qubits the classical controller initialises to |1>
/// before the circuit runs (table marks); they cost no gates.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(const std::vector<std::pair<std::string, std::uint32_t>>& registers);

  /// Declares a further register; returns its id.
  std::uint32_t add_register(std::string name, std::uint32_t size);

  QubitRef qubit(std::string_view reg, std::uint32_t index) const;
  QubitRef qubit(std::uint32_t reg, std::uint32_t index) const;
  std::vector<QubitRef> register_qubits(std::string_view reg) const;
  std::uint32_t register_id(std::string_view reg) const;
  bool has_register(std::string_view reg) const;

  void append(Gate gate, Packing packing = Packing::Greedy);
  void append_all(const std::vector<Gate>& gates, Packing packing = Packing::Greedy);
  void prepare_one(QubitRef q);

  const std::vector<Register>& registers() const { return registers_; }
  const std::vector<std::vector<Gate>>& layers() const { return layers_; }
  const std::vector<QubitRef>& prepared() const { return prepared_; }

  std::size_t width() const { return width_; }
  std::size_t depth() const { return layers_.size(); }
  std::size_t gate_count() const;
  std::size_t register_offset(std::uint32_t reg) const { return offsets_.at(reg); }
  std::size_t flat_index(QubitRef q) const { return offsets_[q.reg] + q.index; }
  std::string describe(QubitRef q) const;

  /// Gates in layer order.
  std::vector<Gate> gates() const;
  /// Inverse circuit (all gate kinds here are self-inverse, except that
  /// AND_COMPUTE and AND_UNCOMPUTE swap roles).
  Circuit inverse() const;
  /// Same registers, gates of `other` appended after ours with greedy packing.
  Circuit concatenated(const Circuit& other) const;
  /// Copy of this circuit with one gate removed (layer, position).
  Circuit without_gate(std::size_t layer, std::size_t position) const;

  /// Layers may be installed directly (deserialisation, tests); validity is
  /// then checked by `validate`.
  void set_layers_unchecked(std::vector<std::vector<Gate>> layers);

 private:
  void check_gate(const Gate& gate) const;

  std::vector<Register> registers_;
  std::vector<std::size_t> offsets_;
  std::size_t width_ = 0;
  std::vector<std::vector<Gate>> layers_;
  std::vector<std::size_t> frontier_;  // per flat qubit: first free layer
  std::vector<QubitRef> prepared_;
};

/// Every invariant violation found; empty iff the circuit is well formed.
std::vector<std::string> validate(const Circuit& circuit);

inline constexpr const char* kCircuitSchemaVersion = "1";

nlohmann::ordered_json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& j);

}  // namespace qramwb
