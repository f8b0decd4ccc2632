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

#include "qramwb/circuit.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace qramwb {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 10> kKindNames{{
    {GateKind::X, "X"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::TOFFOLI, "TOFFOLI"},
    {GateKind::CSWAP, "CSWAP"},
    {GateKind::FANOUT_CNOT, "FANOUT_CNOT"},
    {GateKind::MULTI_CNOT, "MULTI_CNOT"},
    {GateKind::H, "H"},
    {GateKind::AND_COMPUTE, "AND_COMPUTE"},
    {GateKind::AND_UNCOMPUTE, "AND_UNCOMPUTE"},
    {GateKind::CLASSICAL_PHASE_FIXUP, "CLASSICAL_PHASE_FIXUP"},
}};

Gate controlled(GateKind kind, const std::vector<Control>& controls,
                std::vector<QubitRef> rest) {
  Gate g;
  g.kind = kind;
  for (const auto& c : controls) {
    g.operands.push_back(c.qubit);
    g.negated.push_back(c.negated);
  }
  for (auto q : rest) g.operands.push_back(q);
  return g;
}

// Arity problems for a gate, or empty.
std::string arity_problem(const Gate& g) {
  const std::size_t n = g.operands.size();
  const std::size_t c = g.num_controls();
  if (g.negated.size() != c) return "control flag count does not match controls";
  switch (g.kind) {
    case GateKind::X:
    case GateKind::H:
      if (n != 1) return "expects 1 operand";
      break;
    case GateKind::CNOT:
      if (n != 2) return "expects 2 operands";
      break;
    case GateKind::TOFFOLI:
    case GateKind::AND_COMPUTE:
    case GateKind::CSWAP:
      if (n != 3) return "expects 3 operands";
      break;
    case GateKind::FANOUT_CNOT:
      if (n < 2) return "expects a control and at least one target";
      break;
    case GateKind::MULTI_CNOT:
    case GateKind::AND_UNCOMPUTE:
      if (n < 2) return "expects at least one control and a target";
      break;
    case GateKind::CLASSICAL_PHASE_FIXUP:
      if (n < 1) return "expects at least one operand";
      break;
  }
  if (g.parity && g.kind != GateKind::FANOUT_CNOT) return "parity flag only valid on FANOUT_CNOT";
  return {};
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

GateKind gate_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw CircuitError("unknown gate kind '" + std::string(name) + "'");
}

std::size_t Gate::num_controls() const {
  switch (kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::CLASSICAL_PHASE_FIXUP:
      return 0;
    case GateKind::CNOT:
    case GateKind::CSWAP:
    case GateKind::FANOUT_CNOT:
      return operands.empty() ? 0 : 1;
    case GateKind::TOFFOLI:
    case GateKind::AND_COMPUTE:
      return 2;
    case GateKind::MULTI_CNOT:
    case GateKind::AND_UNCOMPUTE:
      return operands.empty() ? 0 : operands.size() - 1;
  }
  return 0;
}

Gate Gate::x(QubitRef t) { return controlled(GateKind::X, {}, {t}); }
Gate Gate::h(QubitRef t) { return controlled(GateKind::H, {}, {t}); }
Gate Gate::cnot(Control c, QubitRef t) { return controlled(GateKind::CNOT, {c}, {t}); }
Gate Gate::toffoli(Control c0, Control c1, QubitRef t) {
  return controlled(GateKind::TOFFOLI, {c0, c1}, {t});
}
Gate Gate::cswap(Control c, QubitRef a, QubitRef b) {
  return controlled(GateKind::CSWAP, {c}, {a, b});
}
Gate Gate::fanout(Control c, std::vector<QubitRef> targets) {
  return controlled(GateKind::FANOUT_CNOT, {c}, std::move(targets));
}
Gate Gate::parity_fanout(QubitRef accumulator, std::vector<QubitRef> sources) {
  Gate g = controlled(GateKind::FANOUT_CNOT, {Control{accumulator, false}}, std::move(sources));
  g.parity = true;
  return g;
}
Gate Gate::multi_cnot(const std::vector<Control>& controls, QubitRef t) {
  return controlled(GateKind::MULTI_CNOT, controls, {t});
}
Gate Gate::and_compute(Control c0, Control c1, QubitRef t) {
  return controlled(GateKind::AND_COMPUTE, {c0, c1}, {t});
}
Gate Gate::and_uncompute(const std::vector<Control>& controls, QubitRef t) {
  return controlled(GateKind::AND_UNCOMPUTE, controls, {t});
}
Gate Gate::phase_fixup(std::vector<QubitRef> qubits) {
  return controlled(GateKind::CLASSICAL_PHASE_FIXUP, {}, std::move(qubits));
}

Circuit::Circuit(const std::vector<std::pair<std::string, std::uint32_t>>& registers) {
  for (const auto& [name, size] : registers) add_register(name, size);
}

std::uint32_t Circuit::add_register(std::string name, std::uint32_t size) {
  if (size == 0) throw CircuitError("register '" + name + "' must have size >= 1");
  if (has_register(name)) throw CircuitError("duplicate register name '" + name + "'");
  registers_.push_back(Register{std::move(name), size});
  offsets_.push_back(width_);
  width_ += size;
  frontier_.resize(width_, 0);
  return static_cast<std::uint32_t>(registers_.size() - 1);
}

bool Circuit::has_register(std::string_view reg) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.name == reg; });
}

std::uint32_t Circuit::register_id(std::string_view reg) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name == reg) return static_cast<std::uint32_t>(i);
  }
  throw CircuitError("undeclared register '" + std::string(reg) + "'");
}

QubitRef Circuit::qubit(std::uint32_t reg, std::uint32_t index) const {
  if (reg >= registers_.size()) throw CircuitError("register id out of range");
  if (index >= registers_[reg].size) {
    throw CircuitError("qubit index " + std::to_string(index) + " out of range for register '" +
                       registers_[reg].name + "'");
  }
  return QubitRef{reg, index};
}

QubitRef Circuit::qubit(std::string_view reg, std::uint32_t index) const {
  return qubit(register_id(reg), index);
}

std::vector<QubitRef> Circuit::register_qubits(std::string_view reg) const {
  const auto id = register_id(reg);
  std::vector<QubitRef> out;
  for (std::uint32_t i = 0; i < registers_[id].size; ++i) out.push_back(QubitRef{id, i});
  return out;
}

std::string Circuit::describe(QubitRef q) const {
  std::ostringstream os;
  if (q.reg < registers_.size()) {
    os << registers_[q.reg].name;
  } else {
    os << "#" << q.reg;
  }
  os << "[" << q.index << "]";
  return os.str();
}

void Circuit::check_gate(const Gate& gate) const {
  if (auto problem = arity_problem(gate); !problem.empty()) {
    throw CircuitError(std::string(gate_kind_name(gate.kind)) + ": " + problem);
  }
  for (std::size_t i = 0; i < gate.operands.size(); ++i) {
    const auto& q = gate.operands[i];
    if (q.reg >= registers_.size() || q.index >= registers_[q.reg].size) {
      throw CircuitError(std::string(gate_kind_name(gate.kind)) + ": invalid qubit reference");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gate.operands[j] == q) {
        throw CircuitError(std::string(gate_kind_name(gate.kind)) + ": repeated operand " +
                           describe(q));
      }
    }
  }
}

void Circuit::append(Gate gate, Packing packing) {
  check_gate(gate);
  std::size_t layer = 0;
  if (packing == Packing::NewLayer) {
    layer = layers_.size();
  } else {
    for (const auto& q : gate.operands) layer = std::max(layer, frontier_[flat_index(q)]);
  }
  if (layer == layers_.size()) layers_.emplace_back();
  for (const auto& q : gate.operands) frontier_[flat_index(q)] = layer + 1;
  layers_[layer].push_back(std::move(gate));
}

void Circuit::append_all(const std::vector<Gate>& gates, Packing packing) {
  for (const auto& g : gates) append(g, packing);
}

void Circuit::prepare_one(QubitRef q) {
  (void)qubit(q.reg, q.index);
  if (std::find(prepared_.begin(), prepared_.end(), q) != prepared_.end()) {
    throw CircuitError("qubit " + describe(q) + " prepared twice");
  }
  prepared_.push_back(q);
}

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.size();
  return n;
}

std::vector<Gate> Circuit::gates() const {
  std::vector<Gate> out;
  out.reserve(gate_count());
  for (const auto& layer : layers_) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

Circuit Circuit::inverse() const {
  Circuit inv;
  for (const auto& r : registers_) inv.add_register(r.name, r.size);
  inv.prepared_ = prepared_;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    for (auto g = it->rbegin(); g != it->rend(); ++g) {
      Gate copy = *g;
      if (copy.kind == GateKind::AND_COMPUTE) {
        copy.kind = GateKind::AND_UNCOMPUTE;
      } else if (copy.kind == GateKind::AND_UNCOMPUTE && copy.num_controls() == 2) {
        copy.kind = GateKind::AND_COMPUTE;
      } else if (copy.kind == GateKind::AND_UNCOMPUTE) {
        copy.kind = GateKind::MULTI_CNOT;
      }
      inv.append(std::move(copy));
    }
  }
  return inv;
}

Circuit Circuit::concatenated(const Circuit& other) const {
  if (other.registers_.size() != registers_.size()) {
    throw CircuitError("concatenation requires identical register layouts");
  }
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name != other.registers_[i].name ||
        registers_[i].size != other.registers_[i].size) {
      throw CircuitError("concatenation requires identical register layouts");
    }
  }
  Circuit out = *this;
  for (const auto& g : other.gates()) out.append(g);
  return out;
}

Circuit Circuit::without_gate(std::size_t layer, std::size_t position) const {
  Circuit out = *this;
  auto& l = out.layers_.at(layer);
  if (position >= l.size()) throw CircuitError("gate position out of range");
  l.erase(l.begin() + static_cast<std::ptrdiff_t>(position));
  if (l.empty()) out.layers_.erase(out.layers_.begin() + static_cast<std::ptrdiff_t>(layer));
  return out;
}

void Circuit::set_layers_unchecked(std::vector<std::vector<Gate>> layers) {
  layers_ = std::move(layers);
  std::fill(frontier_.begin(), frontier_.end(), 0);
  for (std::size_t li = 0; li < layers_.size(); ++li) {
    for (const auto& g : layers_[li]) {
      for (const auto& q : g.operands) {
        if (q.reg < registers_.size() && q.index < registers_[q.reg].size) {
          frontier_[flat_index(q)] = li + 1;
        }
      }
    }
  }
}

std::vector<std::string> validate(const Circuit& circuit) {
  std::vector<std::string> violations;
  const auto& regs = circuit.registers();
  std::set<std::string> names;
  for (const auto& r : regs) {
    if (r.size == 0) violations.push_back("register '" + r.name + "' has size 0");
    if (!names.insert(r.name).second) violations.push_back("duplicate register '" + r.name + "'");
  }
  const auto& layers = circuit.layers();
  for (std::size_t li = 0; li < layers.size(); ++li) {
    std::set<std::size_t> used;
    for (const auto& g : layers[li]) {
      const std::string where = " at layer " + std::to_string(li);
      if (auto problem = arity_problem(g); !problem.empty()) {
        violations.push_back(std::string(gate_kind_name(g.kind)) + " " + problem + where);
      }
      bool valid_refs = true;
      for (const auto& q : g.operands) {
        if (q.reg >= regs.size() || q.index >= regs[q.reg].size) {
          violations.push_back("invalid qubit reference" + where);
          valid_refs = false;
        }
      }
      if (!valid_refs) continue;
      std::set<std::size_t> own;
      for (const auto& q : g.operands) {
        if (!own.insert(circuit.flat_index(q)).second) {
          violations.push_back("operand clash" + where);
        }
      }
      for (auto f : own) {
        if (!used.insert(f).second) violations.push_back("layer overlap" + where);
      }
    }
  }
  return violations;
}

nlohmann::ordered_json circuit_to_json(const Circuit& circuit) {
  nlohmann::ordered_json j;
  j["schema"] = kCircuitSchemaVersion;
  auto regs = nlohmann::ordered_json::array();
  for (const auto& r : circuit.registers()) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["size"] = r.size;
    regs.push_back(e);
  }
  j["registers"] = regs;
  auto ref = [&](const QubitRef& q) {
    return nlohmann::ordered_json::array({circuit.registers()[q.reg].name, q.index});
  };
  auto prepared = nlohmann::ordered_json::array();
  for (const auto& q : circuit.prepared()) prepared.push_back(ref(q));
  j["prepared"] = prepared;
  auto layers = nlohmann::ordered_json::array();
  for (const auto& layer : circuit.layers()) {
    auto l = nlohmann::ordered_json::array();
    for (const auto& g : layer) {
      nlohmann::ordered_json e;
      e["kind"] = gate_kind_name(g.kind);
      auto ops = nlohmann::ordered_json::array();
      for (const auto& q : g.operands) ops.push_back(ref(q));
      e["operands"] = ops;
      nlohmann::ordered_json flags;
      auto neg = nlohmann::ordered_json::array();
      for (bool b : g.negated) neg.push_back(b);
      flags["negated"] = neg;
      flags["parity"] = g.parity;
      e["flags"] = flags;
      l.push_back(e);
    }
    layers.push_back(l);
  }
  j["layers"] = layers;
  return j;
}

Circuit circuit_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != kCircuitSchemaVersion) {
      throw CircuitError("unsupported circuit schema version");
    }
    Circuit c;
    for (const auto& r : j.at("registers")) {
      c.add_register(r.at("name").get<std::string>(), r.at("size").get<std::uint32_t>());
    }
    auto ref = [&](const nlohmann::json& e) {
      return QubitRef{c.register_id(e.at(0).get<std::string>()), e.at(1).get<std::uint32_t>()};
    };
    if (j.contains("prepared")) {
      for (const auto& e : j.at("prepared")) c.prepare_one(ref(e));
    }
    std::vector<std::vector<Gate>> layers;
    for (const auto& l : j.at("layers")) {
      std::vector<Gate> layer;
      for (const auto& e : l) {
        Gate g;
        g.kind = gate_kind_from_name(e.at("kind").get<std::string>());
        for (const auto& q : e.at("operands")) g.operands.push_back(ref(q));
        const auto& flags = e.at("flags");
        for (const auto& b : flags.at("negated")) g.negated.push_back(b.get<bool>());
        g.parity = flags.value("parity", false);
        layer.push_back(std::move(g));
      }
      layers.push_back(std::move(layer));
    }
    c.set_layers_unchecked(std::move(layers));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw CircuitError(std::string("malformed circuit JSON: ") + e.what());
  }
}

}  // namespace qramwb
