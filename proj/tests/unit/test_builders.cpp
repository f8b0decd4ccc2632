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

#include <algorithm>
#include <string>
#include <vector>

#include "qramwb/builders.hpp"
#include "qramwb/resources.hpp"

using namespace qramwb;

namespace {

// Reference bit-level simulator written against the operand layout in
// circuit.hpp, independent of the sparse simulator.
struct RefSim {
  const Circuit& c;
  std::vector<char> bits;

  explicit RefSim(const Circuit& circuit) : c(circuit), bits(circuit.width(), 0) {
    for (const auto& q : c.prepared()) bits[c.flat_index(q)] = 1;
  }

  char& at(QubitRef q) { return bits[c.flat_index(q)]; }

  void set(const std::string& reg, std::uint64_t v) {
    const auto qs = c.register_qubits(reg);
    for (std::size_t i = 0; i < qs.size(); ++i) at(qs[i]) = (v >> i) & 1U;
  }
  std::uint64_t get(const std::string& reg) {
    const auto qs = c.register_qubits(reg);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) v |= std::uint64_t(at(qs[i])) << i;
    return v;
  }

  bool controls_on(const Gate& g) {
    for (std::size_t i = 0; i < g.num_controls(); ++i) {
      if ((at(g.operands[i]) != 0) == g.negated[i]) return false;
    }
    return true;
  }

  void apply(const Gate& g) {
    const auto& o = g.operands;
    switch (g.kind) {
      case GateKind::X:
        at(o[0]) ^= 1;
        break;
      case GateKind::CNOT:
      case GateKind::TOFFOLI:
      case GateKind::AND_COMPUTE:
      case GateKind::MULTI_CNOT:
      case GateKind::AND_UNCOMPUTE:
        if (controls_on(g)) at(o.back()) ^= 1;
        break;
      case GateKind::CSWAP:
        if (controls_on(g)) std::swap(at(o[1]), at(o[2]));
        break;
      case GateKind::FANOUT_CNOT:
        if (g.parity) {
          char p = 0;
          for (std::size_t i = 1; i < o.size(); ++i) p ^= at(o[i]);
          at(o[0]) ^= p;
        } else if (controls_on(g)) {
          for (std::size_t i = 1; i < o.size(); ++i) at(o[i]) ^= 1;
        }
        break;
      case GateKind::H:
      case GateKind::CLASSICAL_PHASE_FIXUP:
        break;
    }
  }

  void run() {
    for (const auto& layer : c.layers()) {
      for (const auto& g : layer) apply(g);
    }
  }
};

bool is_data(const std::string& name) {
  return name == "addr" || name == "out" || name == "ctl" || name == "mem" ||
         name.rfind("addr", 0) == 0 || name.rfind("out", 0) == 0;
}

// Checks every address against the table with ancillas restored.
void check_lookup(const BuilderSpec& spec, const BitTable& t) {
  const auto r = build(spec, t);
  const auto& c = r.circuit;
  REQUIRE(validate(c).empty());
  for (std::uint32_t a = 0; a < t.size(); ++a) {
    RefSim s(c);
    const auto before = s.bits;
    if (spec.kind == BuilderKind::ParallelSorted) {
      for (std::uint32_t j = 0; j < spec.query_count; ++j) {
        s.set("addr" + std::to_string(j), (a + j * 3) % t.size());
      }
    } else {
      s.set("addr", a);
    }
    if (spec.kind == BuilderKind::FanoutSwapQraqm) {
      const auto mem = c.register_qubits("mem");
      for (std::uint32_t i = 0; i < t.size(); ++i) {
        for (std::uint32_t b = 0; b < t.word_width(); ++b) {
          s.at(mem[i * t.word_width() + b]) = t.bit(i, b);
        }
      }
    }
    const bool ctl = spec.controlled;
    if (ctl) s.set("ctl", 1);
    s.run();
    if (spec.kind == BuilderKind::ParallelSorted) {
      for (std::uint32_t j = 0; j < spec.query_count; ++j) {
        const auto addr = (a + j * 3) % t.size();
        CHECK(s.get("addr" + std::to_string(j)) == addr);
        CHECK(s.get("out" + std::to_string(j)) == t.word(addr));
      }
    } else {
      CHECK(s.get("addr") == a);
      CHECK(s.get("out") == t.word(a));
    }
    for (const auto& reg : c.registers()) {
      if (is_data(reg.name)) continue;
      for (const auto& q : c.register_qubits(reg.name)) {
        INFO(spec_to_json(spec).dump(), " N=", t.size(), " a=", a, " ", c.describe(q));
        CHECK(s.at(q) == before[c.flat_index(q)]);
      }
    }
  }
}

std::vector<BuilderSpec> all_specs(std::uint32_t n) {
  std::vector<BuilderSpec> v;
  auto add = [&](BuilderKind k) {
    BuilderSpec s;
    s.kind = k;
    return s;
  };
  v.push_back(add(BuilderKind::Unary));
  v.push_back(add(BuilderKind::Recursive));
  auto rc = add(BuilderKind::Recursive);
  rc.controlled = true;
  v.push_back(rc);
  auto rcoh = add(BuilderKind::Recursive);
  rcoh.uncompute = Uncompute::Coherent;
  v.push_back(rcoh);
  v.push_back(add(BuilderKind::BucketBrigade));
  v.push_back(add(BuilderKind::BadReadoutBB));
  for (std::uint32_t l = 0; (1u << l) <= std::max(1u, n) && l <= ceil_log2(n); ++l) {
    auto ss = add(BuilderKind::SelectSwap);
    ss.page_log = l;
    v.push_back(ss);
    ss.uncompute = Uncompute::MeasurementBased;
    v.push_back(ss);
  }
  v.push_back(add(BuilderKind::FanoutSwapQraqm));
  for (std::uint32_t k : {1u, 2u, 3u}) {
    auto ps = add(BuilderKind::ParallelSorted);
    ps.query_count = k;
    v.push_back(ps);
  }
  return v;
}

}  // namespace

TEST_CASE("every builder matches table lookup on the reference simulator") {
  for (std::uint32_t n : {1u, 2u, 3u, 4u, 6u, 8u, 16u}) {
    for (std::uint32_t w : {1u, 2u}) {
      const auto t = random_table(n, w, 1000 + 10 * n + w);
      for (const auto& spec : all_specs(n)) check_lookup(spec, t);
    }
  }
}

TEST_CASE("builder names round trip") {
  for (auto k : {BuilderKind::Unary, BuilderKind::Recursive, BuilderKind::BucketBrigade,
                 BuilderKind::BadReadoutBB, BuilderKind::SelectSwap, BuilderKind::FanoutSwapQraqm,
                 BuilderKind::ParallelSorted}) {
    CHECK(builder_kind_from_name(builder_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(builder_kind_from_name("tree"), BuilderError);
  CHECK(uncompute_from_name("measurement_based") == Uncompute::MeasurementBased);
}

TEST_CASE("spec validation") {
  const auto t = random_table(8, 1, 1);
  BuilderSpec s;
  s.kind = BuilderKind::BucketBrigade;
  s.uncompute = Uncompute::MeasurementBased;
  CHECK_THROWS_AS(build(s, t), BuilderError);
  s = {};
  s.kind = BuilderKind::Unary;
  s.controlled = true;
  CHECK_THROWS_AS(build(s, t), BuilderError);
  s = {};
  s.kind = BuilderKind::SelectSwap;
  s.page_log = 4;
  CHECK_THROWS_AS(build(s, t), BuilderError);
  s = {};
  s.kind = BuilderKind::ParallelSorted;
  s.query_count = 0;
  CHECK_THROWS_AS(build(s, t), BuilderError);
}

TEST_CASE("default uncompute modes") {
  BuilderSpec s;
  s.kind = BuilderKind::Recursive;
  CHECK(s.effective_uncompute() == Uncompute::MeasurementBased);
  s.kind = BuilderKind::SelectSwap;
  CHECK(s.effective_uncompute() == Uncompute::Coherent);
}

TEST_CASE("select-swap with one-word pages is the unary circuit") {
  const auto t = random_table(16, 2, 4);
  BuilderSpec s;
  s.kind = BuilderKind::SelectSwap;
  s.page_log = 0;
  CHECK(circuit_to_json(build(s, t).circuit).dump() == circuit_to_json(build_unary(t)).dump());
}

TEST_CASE("select-swap reports page parameters") {
  BuilderSpec s;
  s.kind = BuilderKind::SelectSwap;
  s.page_log = 3;
  const auto r = build(s, random_table(64, 1, 2));
  CHECK(r.params["page_size"] == 8);
  CHECK(r.params["pages"] == 8);
}

TEST_CASE("non power of two tables are zero padded") {
  BuilderSpec s;
  s.kind = BuilderKind::Recursive;
  const auto r = build(s, random_table(5, 1, 2));
  CHECK(r.table_size == 5);
  CHECK(r.padded_size == 8);
  CHECK(r.params["padded_from"] == 5);
}

TEST_CASE("bitonic network sorts every 0-1 input") {
  for (std::uint32_t m : {1u, 2u, 4u, 8u, 16u}) {
    const auto net = bitonic_comparators(m);
    std::uint32_t r = 0;
    while ((1u << r) < m) ++r;
    CHECK(net.size() == std::size_t(m / 2) * r * (r + 1) / 2);
    for (std::uint32_t x = 0; x < (1u << m); ++x) {
      std::vector<int> v(m);
      for (std::uint32_t i = 0; i < m; ++i) v[i] = (x >> i) & 1U;
      for (auto [lo, hi] : net) {
        if (v[lo] > v[hi]) std::swap(v[lo], v[hi]);
      }
      REQUIRE(std::is_sorted(v.begin(), v.end()));
    }
  }
}

TEST_CASE("qraqm swap variant moves the cell out") {
  const auto c = build_fanout_swap_qraqm(8, 2, true);
  RefSim s(c);
  s.set("addr", 5);
  const auto mem = c.register_qubits("mem");
  s.at(mem[5 * 2]) = 1;
  s.at(mem[5 * 2 + 1]) = 0;
  s.at(mem[3 * 2 + 1]) = 1;
  s.run();
  CHECK(s.get("out") == 1);
  CHECK(s.at(mem[5 * 2]) == 0);
  CHECK(s.at(mem[3 * 2 + 1]) == 1);
}

TEST_CASE("unary writes single-bit words straight to out") {
  const auto c = build_unary(BitTable({1, 0, 1, 1}, 1));
  for (const auto& g : c.gates()) CHECK(g.kind == GateKind::MULTI_CNOT);
  CHECK(c.gate_count() == 3);
}
