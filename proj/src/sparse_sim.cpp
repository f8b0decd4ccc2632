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

#include "qramwb/sparse_sim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "qramwb/rng.hpp"

namespace qramwb {

namespace {

bool active(const BasisKey& key, std::size_t flat, bool negated) { return key.get(flat) != negated; }

bool controls_active(const BasisKey& key, const Circuit& layout, const Gate& g) {
  const std::size_t nc = g.num_controls();
  for (std::size_t i = 0; i < nc; ++i) {
    if (!active(key, layout.flat_index(g.operands[i]), g.negated[i])) return false;
  }
  return true;
}

void permute(BasisKey& key, const Circuit& layout, const Gate& g) {
  auto flat = [&](std::size_t i) { return layout.flat_index(g.operands[i]); };
  switch (g.kind) {
    case GateKind::X:
      key.flip(flat(0));
      break;
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::AND_COMPUTE:
    case GateKind::MULTI_CNOT:
      if (controls_active(key, layout, g)) key.flip(flat(g.operands.size() - 1));
      break;
    case GateKind::AND_UNCOMPUTE: {
      const bool expected = controls_active(key, layout, g);
      const std::size_t t = flat(g.operands.size() - 1);
      if (key.get(t) != expected) {
        throw SimError("AND_UNCOMPUTE target " + layout.describe(g.operands.back()) +
                       " inconsistent with its controls");
      }
      if (expected) key.flip(t);
      break;
    }
    case GateKind::CSWAP:
      if (controls_active(key, layout, g)) {
        const bool a = key.get(flat(1));
        const bool b = key.get(flat(2));
        key.set(flat(1), b);
        key.set(flat(2), a);
      }
      break;
    case GateKind::FANOUT_CNOT:
      if (g.parity) {
        bool parity = false;
        for (std::size_t i = 1; i < g.operands.size(); ++i) parity ^= key.get(flat(i));
        if (parity) key.flip(flat(0));
      } else if (active(key, flat(0), g.negated[0])) {
        for (std::size_t i = 1; i < g.operands.size(); ++i) key.flip(flat(i));
      }
      break;
    case GateKind::CLASSICAL_PHASE_FIXUP:
    case GateKind::H:
      break;
  }
}

void set_bits(BasisKey& key, const Circuit& layout, std::string_view reg, std::uint32_t offset,
              std::uint32_t count, std::uint64_t value) {
  const auto id = layout.register_id(reg);
  for (std::uint32_t b = 0; b < count; ++b) {
    key.set(layout.register_offset(id) + offset + b, (value >> b) & 1U);
  }
}

std::uint64_t get_bits(const BasisKey& key, const Circuit& layout, std::string_view reg,
                       std::uint32_t offset, std::uint32_t count) {
  const auto id = layout.register_id(reg);
  std::uint64_t v = 0;
  for (std::uint32_t b = 0; b < count; ++b) {
    if (key.get(layout.register_offset(id) + offset + b)) v |= std::uint64_t{1} << b;
  }
  return v;
}

bool is_data_register(const std::string& name, BuilderKind kind) {
  if (name == "addr" || name == "out" || name == "ctl" || name == "mem") return true;
  if (kind == BuilderKind::ParallelSorted) {
    return (name.rfind("addr", 0) == 0 || name.rfind("out", 0) == 0) && name.size() > 3 &&
           std::isdigit(static_cast<unsigned char>(name.back()));
  }
  return false;
}

}  // namespace

std::uint64_t read_register(const BasisKey& key, const Circuit& layout, std::string_view reg) {
  const auto id = layout.register_id(reg);
  return get_bits(key, layout, reg, 0, std::min<std::uint32_t>(64, layout.registers()[id].size));
}

void write_register(BasisKey& key, const Circuit& layout, std::string_view reg,
                    std::uint64_t value) {
  const auto id = layout.register_id(reg);
  const std::uint32_t size = layout.registers()[id].size;
  if (size < 64 && (value >> size) != 0) {
    throw SimError("value does not fit register '" + std::string(reg) + "'");
  }
  set_bits(key, layout, reg, 0, std::min<std::uint32_t>(64, size), value);
}

BasisKey initial_key(const Circuit& layout) {
  BasisKey key(layout.width());
  for (const auto& q : layout.prepared()) key.set(layout.flat_index(q), true);
  return key;
}

SparseState::SparseState(std::size_t width, std::size_t cap) : width_(width), cap_(cap) {}

SparseState SparseState::basis(const BasisKey& key, std::size_t width, std::size_t cap) {
  SparseState s(width, cap);
  s.entries_.emplace_back(key, Amplitude{1.0, 0.0});
  return s;
}

void SparseState::add(const BasisKey& key, Amplitude amp) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const auto& e, const BasisKey& k) { return e.first < k; });
  if (it != entries_.end() && it->first == key) {
    it->second += amp;
  } else {
    if (entries_.size() >= cap_) throw SimError("support cap exceeded");
    entries_.emplace(it, key, amp);
  }
}

Amplitude SparseState::amplitude(const BasisKey& key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const auto& e, const BasisKey& k) { return e.first < k; });
  if (it != entries_.end() && it->first == key) return it->second;
  return {0.0, 0.0};
}

double SparseState::norm_squared() const {
  double s = 0.0;
  for (const auto& [k, a] : entries_) s += std::norm(a);
  return s;
}

void SparseState::normalize_storage() {
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<BasisKey, Amplitude>> merged;
  for (auto& e : entries_) {
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(std::move(e));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const auto& e) { return std::abs(e.second) < 1e-15; }),
               merged.end());
  entries_ = std::move(merged);
}

void apply_gate(SparseState& state, const Circuit& layout, const Gate& gate) {
  for (const auto& q : gate.operands) {
    if (q.reg >= layout.registers().size() || q.index >= layout.registers()[q.reg].size ||
        layout.flat_index(q) >= state.width()) {
      throw SimError("gate operand outside the state layout");
    }
  }
  auto& entries = state.mutable_entries();
  if (gate.kind != GateKind::H) {
    for (auto& e : entries) permute(e.first, layout, gate);
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return;
  }
  const std::size_t t = layout.flat_index(gate.operands[0]);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<std::pair<BasisKey, Amplitude>> split;
  split.reserve(entries.size() * 2);
  for (const auto& [key, amp] : entries) {
    BasisKey zero = key;
    zero.set(t, false);
    BasisKey one = key;
    one.set(t, true);
    split.emplace_back(zero, amp * r);
    split.emplace_back(one, key.get(t) ? -amp * r : amp * r);
  }
  entries = std::move(split);
  state.normalize_storage();
  if (state.support() > state.cap()) throw SimError("support cap exceeded");
}

SparseState run(const Circuit& circuit, SparseState input) {
  if (input.width() != circuit.width()) throw SimError("state width does not match circuit");
  for (const auto& layer : circuit.layers()) {
    for (const auto& g : layer) apply_gate(input, circuit, g);
  }
  return input;
}

double max_amplitude_deviation(const SparseState& a, const SparseState& b) {
  double dev = 0.0;
  for (const auto& [k, amp] : a.entries()) dev = std::max(dev, std::abs(amp - b.amplitude(k)));
  for (const auto& [k, amp] : b.entries()) dev = std::max(dev, std::abs(amp - a.amplitude(k)));
  return dev;
}

std::size_t VerifyReport::failure_count() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; }));
}

VerifyReport verify_circuit(const Circuit& circuit, const BuilderSpec& spec, const BitTable& table,
                            const VerifyOptions& options) {
  VerifyReport rep;
  rep.spec = spec_to_json(spec);
  rep.n = table.size();
  rep.mode = options.mode == VerifyMode::Exhaustive ? "exhaustive" : "sampled";
  if (options.mode == VerifyMode::Exhaustive && table.size() > kExhaustiveLimit) {
    throw SimError("exhaustive verification requires N <= " + std::to_string(kExhaustiveLimit));
  }
  const std::uint32_t n = address_bits(table.size());
  const std::uint32_t w = table.word_width();
  const BitTable padded = table.padded(std::uint32_t{1} << n);
  const bool qraqm = spec.kind == BuilderKind::FanoutSwapQraqm;
  const bool parallel = spec.kind == BuilderKind::ParallelSorted;
  const bool controlled = spec.kind == BuilderKind::Recursive && spec.controlled;
  const std::uint32_t queries = parallel ? spec.query_count : 1;

  // Input space: one address per query, plus the control value.
  const std::uint64_t per_query = std::uint64_t{1} << n;
  std::uint64_t space = 1;
  for (std::uint32_t j = 0; j < queries; ++j) space *= per_query;
  if (controlled) space *= 2;

  auto decode = [&](std::uint64_t code) {
    std::vector<std::uint64_t> in;
    for (std::uint32_t j = 0; j < queries; ++j) {
      in.push_back(code % per_query);
      code /= per_query;
    }
    if (controlled) in.push_back(code);
    return in;
  };

  std::vector<std::uint64_t> codes;
  if (options.mode == VerifyMode::Exhaustive) {
    for (std::uint64_t c = 0; c < space; ++c) codes.push_back(c);
  } else {
    for (std::uint32_t s = 0; s < options.samples; ++s) {
      StreamRng rng(options.seed, s);
      codes.push_back(rng() % space);
    }
  }

  const auto regs = circuit.registers();
  for (const auto code : codes) {
    InputResult res;
    res.input = decode(code);
    BasisKey key = initial_key(circuit);
    BasisKey expect = key;
    try {
      if (parallel) {
        for (std::uint32_t j = 0; j < queries; ++j) {
          write_register(key, circuit, "addr" + std::to_string(j), res.input[j]);
          write_register(expect, circuit, "addr" + std::to_string(j), res.input[j]);
          const std::uint64_t word = padded.word(static_cast<std::uint32_t>(res.input[j]));
          write_register(expect, circuit, "out" + std::to_string(j), word);
          res.expected.push_back(word);
        }
      } else {
        const auto addr = static_cast<std::uint32_t>(res.input[0]);
        write_register(key, circuit, "addr", addr);
        write_register(expect, circuit, "addr", addr);
        std::uint64_t word = padded.word(addr);
        if (controlled) {
          write_register(key, circuit, "ctl", res.input[1]);
          write_register(expect, circuit, "ctl", res.input[1]);
          if (res.input[1] == 0) word = 0;
        }
        if (qraqm) {
          for (std::uint32_t i = 0; i < padded.size(); ++i) {
            set_bits(key, circuit, "mem", i * w, w, padded.word(i));
            set_bits(expect, circuit, "mem", i * w, w, padded.word(i));
          }
          if (spec.swap_variant) set_bits(expect, circuit, "mem", addr * w, w, 0);
        }
        write_register(expect, circuit, "out", word);
        res.expected.push_back(word);
      }
    } catch (const CircuitError& e) {
      throw SimError(std::string("circuit does not follow the builder register layout: ") +
                     e.what());
    }

    SparseState out(circuit.width());
    try {
      out = run(circuit, SparseState::basis(key, circuit.width()));
    } catch (const SimError& e) {
      res.pass = false;
      res.detail = e.what();
      rep.results.push_back(std::move(res));
      continue;
    }
    const SparseState ideal = SparseState::basis(expect, circuit.width());
    const double dev = max_amplitude_deviation(out, ideal);
    rep.max_dev = std::max(rep.max_dev, dev);
    const BasisKey got = out.entries().empty() ? BasisKey(circuit.width())
                                               : out.entries().front().first;
    if (parallel) {
      for (std::uint32_t j = 0; j < queries; ++j) {
        res.got.push_back(read_register(got, circuit, "out" + std::to_string(j)));
      }
    } else {
      res.got.push_back(read_register(got, circuit, "out"));
    }
    if (dev > 1e-10) {
      res.pass = false;
      bool data_ok = true;
      for (std::uint32_t r = 0; r < regs.size(); ++r) {
        const auto off = circuit.register_offset(r);
        bool same = true;
        for (std::uint32_t b = 0; b < regs[r].size; ++b) same &= got.get(off + b) == expect.get(off + b);
        if (same) continue;
        if (is_data_register(regs[r].name, spec.kind)) {
          data_ok = false;
          if (!res.detail.empty()) res.detail += "; ";
          res.detail += "register '" + regs[r].name + "' wrong";
        } else {
          rep.ancilla_clean = false;
          if (!res.detail.empty()) res.detail += "; ";
          res.detail += "ancilla '" + regs[r].name + "' not restored";
        }
      }
      if (data_ok && res.detail.empty()) res.detail = "amplitude deviation";
    }
    rep.results.push_back(std::move(res));
  }
  rep.tested = rep.results.size();
  return rep;
}

VerifyReport verify_builder(const BuilderSpec& spec, const BitTable& table,
                            const VerifyOptions& options) {
  if (options.mode == VerifyMode::Exhaustive && table.size() > kExhaustiveLimit) {
    throw SimError("exhaustive verification requires N <= " + std::to_string(kExhaustiveLimit));
  }
  const BuildResult built = build(spec, table);
  return verify_circuit(built.circuit, spec, table, options);
}

nlohmann::ordered_json verify_to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["spec"] = report.spec;
  j["N"] = report.n;
  j["mode"] = report.mode;
  j["tested"] = report.tested;
  auto failures = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    if (r.pass) continue;
    nlohmann::ordered_json f;
    f["input"] = r.input;
    f["expected"] = r.expected;
    f["got"] = r.got;
    f["detail"] = r.detail;
    failures.push_back(f);
  }
  j["failures"] = failures;
  j["ancilla_clean"] = report.ancilla_clean;
  j["max_dev"] = report.max_dev;
  j["passed"] = report.passed();
  return j;
}

}  // namespace qramwb
