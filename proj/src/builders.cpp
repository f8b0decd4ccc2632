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

#include "qramwb/builders.hpp"

#include <array>
#include <cmath>
#include <string>

namespace qramwb {

namespace {

constexpr std::array<std::pair<BuilderKind, std::string_view>, 7> kBuilderNames{{
    {BuilderKind::Unary, "unary"},
    {BuilderKind::Recursive, "recursive"},
    {BuilderKind::BucketBrigade, "bucket_brigade"},
    {BuilderKind::BadReadoutBB, "bad_readout_bb"},
    {BuilderKind::SelectSwap, "select_swap"},
    {BuilderKind::FanoutSwapQraqm, "fanout_swap_qraqm"},
    {BuilderKind::ParallelSorted, "parallel_sorted"},
}};

using Word = std::vector<QubitRef>;

Control pos(QubitRef q) { return Control{q, false}; }
Control neg(QubitRef q) { return Control{q, true}; }

std::vector<Control> address_controls(const std::vector<QubitRef>& addr, std::uint64_t i) {
  std::vector<Control> cs;
  for (std::size_t j = 0; j < addr.size(); ++j) cs.push_back(Control{addr[j], ((i >> j) & 1U) == 0});
  return cs;
}

// Writes entries[i] (a set of target qubits) when addr == i. Entries with
// exactly one target are written by a single multi-controlled NOT; larger
// entries go through the comparator ancilla `b`.
void emit_unary(Circuit& c, const std::vector<QubitRef>& addr, const std::vector<Word>& entries,
                QubitRef b, Uncompute uncompute) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Word& targets = entries[i];
    if (targets.empty()) continue;
    if (addr.empty()) {
      for (auto t : targets) c.append(Gate::x(t));
      continue;
    }
    const auto controls = address_controls(addr, i);
    if (targets.size() == 1) {
      c.append(Gate::multi_cnot(controls, targets[0]));
      continue;
    }
    c.append(Gate::multi_cnot(controls, b));
    c.append(Gate::fanout(pos(b), targets));
    if (uncompute == Uncompute::MeasurementBased) {
      c.append(Gate::and_uncompute(controls, b));
      c.append(Gate::phase_fixup({b}));
    } else {
      c.append(Gate::multi_cnot(controls, b));
    }
  }
}

Word word_targets(const BitTable& t, std::uint32_t i, const Word& out) {
  Word w;
  for (std::uint32_t b = 0; b < t.word_width(); ++b) {
    if (t.bit(i, b)) w.push_back(out[b]);
  }
  return w;
}

void add_ladder(Circuit& c, std::size_t address_qubits) {
  if (address_qubits >= 3) c.add_register("ladder", static_cast<std::uint32_t>(address_qubits - 2));
}

BitTable pow2_padded(const BitTable& t) {
  return t.padded(std::uint32_t{1} << address_bits(t.size()));
}

// Stage A of the fanout-and-swap network: moves cell `a` (as a number on
// `addr`) into cell 0. Cells are words of equal width.
std::vector<Gate> swap_network(const std::vector<QubitRef>& addr, const std::vector<Word>& cells,
                               const std::vector<QubitRef>& anc) {
  std::vector<Gate> gates;
  const std::size_t m = cells.size();
  for (std::size_t j = 0; j < addr.size(); ++j) {
    const std::size_t step = std::size_t{1} << j;
    const std::size_t count = m / (2 * step);
    if (count > 1) {
      std::vector<QubitRef> copies(anc.begin(), anc.begin() + static_cast<std::ptrdiff_t>(count));
      gates.push_back(Gate::fanout(pos(addr[j]), copies));
      for (std::size_t p = 0; p < count; ++p) {
        const auto& lo = cells[p * 2 * step];
        const auto& hi = cells[p * 2 * step + step];
        for (std::size_t b = 0; b < lo.size(); ++b) gates.push_back(Gate::cswap(pos(copies[p]), lo[b], hi[b]));
      }
      gates.push_back(Gate::fanout(pos(addr[j]), copies));
    } else {
      for (std::size_t b = 0; b < cells[0].size(); ++b) {
        gates.push_back(Gate::cswap(pos(addr[j]), cells[0][b], cells[step][b]));
      }
    }
  }
  return gates;
}

std::uint32_t swap_ancillas(std::uint32_t levels) {
  const std::uint32_t first = levels == 0 ? 0 : (std::uint32_t{1} << (levels - 1));
  return first > 1 ? first : 0;
}

void recurse(Circuit& c, Control ctrl, int bit, std::uint32_t base, const BitTable& t,
             const Word& addr, const Word& out, const Word& stack, Uncompute uncompute) {
  if (bit < 0) {
    const Word targets = word_targets(t, base, out);
    if (targets.size() == 1) {
      c.append(Gate::cnot(ctrl, targets[0]));
    } else if (!targets.empty()) {
      c.append(Gate::fanout(ctrl, targets));
    }
    return;
  }
  const QubitRef s = stack[static_cast<std::size_t>(bit)];
  const QubitRef a = addr[static_cast<std::size_t>(bit)];
  const std::uint32_t half = std::uint32_t{1} << bit;
  c.append(Gate::and_compute(ctrl, neg(a), s));
  recurse(c, pos(s), bit - 1, base, t, addr, out, stack, uncompute);
  c.append(Gate::cnot(ctrl, s));
  recurse(c, pos(s), bit - 1, base + half, t, addr, out, stack, uncompute);
  if (uncompute == Uncompute::MeasurementBased) {
    c.append(Gate::and_uncompute({ctrl, pos(a)}, s));
  } else {
    c.append(Gate::toffoli(ctrl, pos(a), s));
  }
}

// Heap-ordered routing tree: node k has children 2k+1 (bit 0) and 2k+2
// (bit 1); nodes on level j are steered by address bit n-1-j.
struct Tree {
  std::uint32_t n = 0;
  Word c;
  Word r;

  static std::uint32_t first(std::uint32_t level) { return (std::uint32_t{1} << level) - 1; }
  std::uint32_t nodes_on(std::uint32_t level) const { return std::uint32_t{1} << level; }
};

Tree make_tree(Circuit& circ, std::uint32_t n) {
  const std::uint32_t nodes = (std::uint32_t{1} << n) - 1;
  circ.add_register("c", nodes);
  circ.add_register("r", nodes);
  return Tree{n, circ.register_qubits("c"), circ.register_qubits("r")};
}

void route(std::vector<Gate>& g, const Tree& t, std::uint32_t k, QubitRef d0, QubitRef d1) {
  g.push_back(Gate::cswap(neg(t.c[k]), t.r[k], d0));
  g.push_back(Gate::cswap(pos(t.c[k]), t.r[k], d1));
}

// Routes every node of `level` into its children's r (or into `bottom`
// below the last level, indexed by leaf number).
void route_level(std::vector<Gate>& g, const Tree& t, std::uint32_t level, const Word* bottom,
                 std::uint32_t stride = 1, std::uint32_t offset = 0) {
  for (std::uint32_t k = Tree::first(level); k < Tree::first(level + 1); ++k) {
    if (level + 1 < t.n) {
      route(g, t, k, t.r[2 * k + 1], t.r[2 * k + 2]);
    } else {
      const std::uint32_t leaf = 2 * (k - Tree::first(level));
      route(g, t, k, (*bottom)[leaf * stride + offset], (*bottom)[(leaf + 1) * stride + offset]);
    }
  }
}

void move(std::vector<Gate>& g, QubitRef from, QubitRef to) {
  g.push_back(Gate::cnot(pos(from), to));
  g.push_back(Gate::cnot(pos(to), from));
}

// Address loading: bit n-1-i travels to the root, down i-1 levels, and is
// absorbed into the c qubits of level i.
std::vector<Gate> load_address(const Tree& t, const Word& addr) {
  std::vector<Gate> g;
  move(g, addr[t.n - 1], t.c[0]);
  for (std::uint32_t i = 1; i < t.n; ++i) {
    move(g, addr[t.n - 1 - i], t.r[0]);
    for (std::uint32_t j = 0; j + 1 < i; ++j) route_level(g, t, j, nullptr);
    for (std::uint32_t k = Tree::first(i - 1); k < Tree::first(i); ++k) {
      route(g, t, k, t.c[2 * k + 1], t.c[2 * k + 2]);
    }
  }
  return g;
}

void append_reversed(Circuit& c, const std::vector<Gate>& g) {
  for (auto it = g.rbegin(); it != g.rend(); ++it) c.append(*it);
}

void check_page_log(std::uint32_t n_entries, std::uint32_t page_log) {
  if (page_log > ceil_log2(n_entries)) {
    throw BuilderError("page_log " + std::to_string(page_log) + " out of range [0, " +
                       std::to_string(ceil_log2(n_entries)) + "]");
  }
}

}  // namespace

std::string_view builder_kind_name(BuilderKind kind) {
  for (const auto& [k, name] : kBuilderNames) {
    if (k == kind) return name;
  }
  return "?";
}

BuilderKind builder_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kBuilderNames) {
    if (n == name) return k;
  }
  throw BuilderError("unknown builder kind '" + std::string(name) + "'");
}

std::string_view uncompute_name(Uncompute u) {
  return u == Uncompute::Coherent ? "coherent" : "measurement_based";
}

Uncompute uncompute_from_name(std::string_view name) {
  if (name == "coherent") return Uncompute::Coherent;
  if (name == "measurement_based") return Uncompute::MeasurementBased;
  throw BuilderError("unknown uncompute mode '" + std::string(name) + "'");
}

Uncompute BuilderSpec::effective_uncompute() const {
  if (uncompute) return *uncompute;
  return kind == BuilderKind::Recursive ? Uncompute::MeasurementBased : Uncompute::Coherent;
}

nlohmann::ordered_json spec_to_json(const BuilderSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = builder_kind_name(spec.kind);
  j["uncompute"] = uncompute_name(spec.effective_uncompute());
  switch (spec.kind) {
    case BuilderKind::SelectSwap:
      j["page_log"] = spec.page_log;
      break;
    case BuilderKind::ParallelSorted:
      j["query_count"] = spec.query_count;
      break;
    case BuilderKind::Recursive:
      j["controlled"] = spec.controlled;
      break;
    case BuilderKind::FanoutSwapQraqm:
      j["swap_variant"] = spec.swap_variant;
      break;
    default:
      break;
  }
  return j;
}

Circuit build_unary(const BitTable& table) {
  const std::uint32_t n = address_bits(table.size());
  Circuit c({{"addr", n}, {"out", table.word_width()}, {"anc", 1}});
  add_ladder(c, n);
  const Word addr = c.register_qubits("addr");
  const Word out = c.register_qubits("out");
  std::vector<Word> entries;
  for (std::uint32_t i = 0; i < table.size(); ++i) entries.push_back(word_targets(table, i, out));
  emit_unary(c, addr, entries, c.qubit("anc", 0), Uncompute::Coherent);
  return c;
}

Circuit build_recursive(const BitTable& table, bool controlled, Uncompute uncompute) {
  const BitTable t = pow2_padded(table);
  const std::uint32_t n = address_bits(t.size());
  Circuit c({{"addr", n}, {"out", t.word_width()}});
  if (controlled) c.add_register("ctl", 1);
  c.add_register("stack", n);
  const Word addr = c.register_qubits("addr");
  const Word out = c.register_qubits("out");
  const Word stack = c.register_qubits("stack");
  const int top = static_cast<int>(n) - 1;
  if (controlled) {
    recurse(c, pos(c.qubit("ctl", 0)), top, 0, t, addr, out, stack, uncompute);
  } else {
    const QubitRef a = addr[n - 1];
    recurse(c, neg(a), top - 1, 0, t, addr, out, stack, uncompute);
    recurse(c, pos(a), top - 1, std::uint32_t{1} << (n - 1), t, addr, out, stack, uncompute);
  }
  return c;
}

std::uint64_t bucket_brigade_cswaps(std::uint32_t n, std::uint32_t word_width) {
  const std::uint64_t big_n = std::uint64_t{1} << n;
  return 4 * (big_n - n - 1) + 4 * (big_n - 1) * word_width;
}

Circuit build_bucket_brigade(const BitTable& table) {
  const BitTable t = pow2_padded(table);
  const std::uint32_t n = address_bits(t.size());
  const std::uint32_t w = t.word_width();
  Circuit c({{"addr", n}, {"out", w}});
  const Tree tree = make_tree(c, n);
  c.add_register("leaf", t.size() * w);
  const Word leaf = c.register_qubits("leaf");
  for (std::uint32_t i = 0; i < t.size(); ++i) {
    for (std::uint32_t b = 0; b < w; ++b) {
      if (t.bit(i, b)) c.prepare_one(leaf[i * w + b]);
    }
  }
  const Word addr = c.register_qubits("addr");
  const Word out = c.register_qubits("out");
  const auto load = load_address(tree, addr);
  c.append_all(load);
  for (std::uint32_t b = 0; b < w; ++b) {
    std::vector<Gate> up;
    for (std::uint32_t j = n; j-- > 0;) route_level(up, tree, j, &leaf, w, b);
    c.append_all(up);
    c.append(Gate::cnot(pos(tree.r[0]), out[b]));
    append_reversed(c, up);
  }
  append_reversed(c, load);
  return c;
}

Circuit build_bad_readout_bb(const BitTable& table) {
  const BitTable t = pow2_padded(table);
  const std::uint32_t n = address_bits(t.size());
  const std::uint32_t w = t.word_width();
  const std::uint32_t big_n = t.size();
  Circuit c({{"addr", n}, {"out", w}});
  const Tree tree = make_tree(c, n);
  c.add_register("tok", 1);
  c.add_register("slot", big_n);
  c.add_register("L", big_n * w);
  const Word addr = c.register_qubits("addr");
  const Word out = c.register_qubits("out");
  const Word slot = c.register_qubits("slot");
  const Word layer = c.register_qubits("L");
  const QubitRef tok = c.qubit("tok", 0);

  const auto load = load_address(tree, addr);
  std::vector<Gate> send;
  send.push_back(Gate::x(tok));
  move(send, tok, tree.r[0]);
  for (std::uint32_t j = 0; j < n; ++j) route_level(send, tree, j, &slot);
  std::vector<Gate> mark;
  for (std::uint32_t i = 0; i < big_n; ++i) {
    for (std::uint32_t b = 0; b < w; ++b) {
      if (t.bit(i, b)) mark.push_back(Gate::cnot(pos(slot[i]), layer[i * w + b]));
    }
  }

  c.append_all(load);
  c.append_all(send);
  c.append_all(mark);
  for (std::uint32_t b = 0; b < w; ++b) {
    Word sources;
    for (std::uint32_t i = 0; i < big_n; ++i) sources.push_back(layer[i * w + b]);
    c.append(Gate::parity_fanout(out[b], sources));
  }
  append_reversed(c, mark);
  append_reversed(c, send);
  append_reversed(c, load);
  return c;
}

Circuit build_fanout_swap_qraqm(std::uint32_t n, std::uint32_t word_width, bool swap_variant) {
  if (n < 1) throw BuilderError("fanout_swap_qraqm needs n >= 1");
  const std::uint32_t cells = std::uint32_t{1} << n;
  Circuit c({{"addr", n}, {"mem", cells * word_width}, {"out", word_width}});
  if (swap_ancillas(n) > 0) c.add_register("swap_anc", swap_ancillas(n));
  const Word addr = c.register_qubits("addr");
  const Word mem = c.register_qubits("mem");
  const Word out = c.register_qubits("out");
  std::vector<Word> cell(cells);
  for (std::uint32_t i = 0; i < cells; ++i) {
    cell[i].assign(mem.begin() + i * word_width, mem.begin() + (i + 1) * word_width);
  }
  const Word anc = swap_ancillas(n) > 0 ? c.register_qubits("swap_anc") : Word{};
  const auto stage_a = swap_network(addr, cell, anc);
  c.append_all(stage_a);
  for (std::uint32_t b = 0; b < word_width; ++b) {
    if (swap_variant) {
      c.append(Gate::cnot(pos(cell[0][b]), out[b]));
      c.append(Gate::cnot(pos(out[b]), cell[0][b]));
      c.append(Gate::cnot(pos(cell[0][b]), out[b]));
    } else {
      c.append(Gate::cnot(pos(cell[0][b]), out[b]));
    }
  }
  append_reversed(c, stage_a);
  return c;
}

Circuit build_select_swap(const BitTable& table, std::uint32_t page_log, Uncompute uncompute) {
  check_page_log(table.size(), page_log);
  if (page_log == 0) {
    if (uncompute == Uncompute::Coherent) return build_unary(table);
  }
  const std::uint32_t n = address_bits(table.size());
  const std::uint32_t w = table.word_width();
  const std::uint32_t page = std::uint32_t{1} << page_log;
  const std::uint32_t pages = (table.size() + page - 1) / page;
  const std::uint32_t high = n - page_log;

  Circuit c({{"addr", n}, {"out", w}});
  if (page_log > 0) c.add_register("aux", page * w);
  c.add_register("anc", 1);
  add_ladder(c, high);
  if (swap_ancillas(page_log) > 0) c.add_register("swap_anc", swap_ancillas(page_log));
  const Word addr = c.register_qubits("addr");
  const Word out = c.register_qubits("out");
  const Word aux = page_log > 0 ? c.register_qubits("aux") : out;
  const Word low(addr.begin(), addr.begin() + page_log);
  const Word hi(addr.begin() + page_log, addr.end());

  std::vector<Word> entries(pages);
  for (std::uint32_t p = 0; p < pages; ++p) {
    for (std::uint32_t s = 0; s < page; ++s) {
      const std::uint32_t i = p * page + s;
      if (i >= table.size()) break;
      for (std::uint32_t b = 0; b < w; ++b) {
        if (table.bit(i, b)) entries[p].push_back(aux[s * w + b]);
      }
    }
  }
  const QubitRef b = c.qubit("anc", 0);
  emit_unary(c, hi, entries, b, uncompute);
  if (page_log == 0) return c;

  std::vector<Word> cells(page);
  for (std::uint32_t s = 0; s < page; ++s) {
    cells[s].assign(aux.begin() + s * w, aux.begin() + (s + 1) * w);
  }
  const Word anc = swap_ancillas(page_log) > 0 ? c.register_qubits("swap_anc") : Word{};
  const auto stage_a = swap_network(low, cells, anc);
  c.append_all(stage_a);
  for (std::uint32_t bit = 0; bit < w; ++bit) c.append(Gate::cnot(pos(cells[0][bit]), out[bit]));
  append_reversed(c, stage_a);
  emit_unary(c, hi, entries, b, uncompute);
  return c;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> bitonic_comparators(std::uint32_t m) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cmp;
  for (std::uint32_t size = 2; size <= m; size *= 2) {
    for (std::uint32_t stride = size / 2; stride > 0; stride /= 2) {
      for (std::uint32_t i = 0; i < m; ++i) {
        const std::uint32_t j = i ^ stride;
        if (j <= i) continue;
        if ((i & size) == 0) {
          cmp.emplace_back(i, j);
        } else {
          cmp.emplace_back(j, i);
        }
      }
    }
  }
  return cmp;
}

namespace {

struct Record {
  QubitRef pad;
  Word addr;
  Word data;
  QubitRef flag;

  Word all() const {
    Word v{pad};
    v.insert(v.end(), addr.begin(), addr.end());
    v.insert(v.end(), data.begin(), data.end());
    v.push_back(flag);
    return v;
  }
  // Sort key, most significant first; `second` marks bits whose key value
  // is the negation of the qubit (memory records precede queries on ties).
  std::vector<std::pair<QubitRef, bool>> key() const {
    std::vector<std::pair<QubitRef, bool>> k{{pad, false}};
    for (auto it = addr.rbegin(); it != addr.rend(); ++it) k.emplace_back(*it, false);
    k.emplace_back(flag, true);
    return k;
  }
};

// cmp ^= key(a) > key(b)
void emit_compare(std::vector<Gate>& g, const Record& a, const Record& b, QubitRef cmp) {
  const auto ka = a.key();
  const auto kb = b.key();
  for (std::size_t h = 0; h < ka.size(); ++h) g.push_back(Gate::cnot(pos(ka[h].first), kb[h].first));
  for (std::size_t h = 0; h < ka.size(); ++h) {
    std::vector<Control> cs{Control{ka[h].first, ka[h].second}, pos(kb[h].first)};
    for (std::size_t up = 0; up < h; ++up) cs.push_back(neg(kb[up].first));
    g.push_back(Gate::multi_cnot(cs, cmp));
  }
  for (std::size_t h = ka.size(); h-- > 0;) g.push_back(Gate::cnot(pos(ka[h].first), kb[h].first));
}

}  // namespace

Circuit build_parallel_sorted(const BitTable& table, std::uint32_t query_count) {
  if (query_count < 1) throw BuilderError("parallel_sorted needs query_count >= 1");
  const std::uint32_t n = address_bits(table.size());
  const std::uint32_t w = table.word_width();
  const std::uint32_t big_n = table.size();
  const std::uint32_t k = query_count;
  const std::uint32_t m = std::uint32_t{1} << ceil_log2(big_n + k);
  const std::uint32_t rec_bits = n + w + 2;
  const auto comparators = bitonic_comparators(m);

  Circuit c;
  for (std::uint32_t j = 0; j < k; ++j) c.add_register("addr" + std::to_string(j), n);
  for (std::uint32_t j = 0; j < k; ++j) c.add_register("out" + std::to_string(j), w);
  c.add_register("qpad", k);
  c.add_register("qflag", k);
  c.add_register("rec", big_n * rec_bits);
  if (m > big_n + k) c.add_register("padrec", (m - big_n - k) * rec_bits);
  if (!comparators.empty()) c.add_register("cmp", static_cast<std::uint32_t>(comparators.size()));

  std::vector<Record> slots;
  auto block = [&](const std::string& reg, std::uint32_t index) {
    Record r;
    const std::uint32_t base = index * rec_bits;
    r.pad = c.qubit(reg, base);
    for (std::uint32_t b = 0; b < n; ++b) r.addr.push_back(c.qubit(reg, base + 1 + b));
    for (std::uint32_t b = 0; b < w; ++b) r.data.push_back(c.qubit(reg, base + 1 + n + b));
    r.flag = c.qubit(reg, base + 1 + n + w);
    return r;
  };
  for (std::uint32_t i = 0; i < big_n; ++i) {
    Record r = block("rec", i);
    for (std::uint32_t b = 0; b < n; ++b) {
      if ((i >> b) & 1U) c.prepare_one(r.addr[b]);
    }
    for (std::uint32_t b = 0; b < w; ++b) {
      if (table.bit(i, b)) c.prepare_one(r.data[b]);
    }
    c.prepare_one(r.flag);
    slots.push_back(r);
  }
  for (std::uint32_t j = 0; j < k; ++j) {
    Record r;
    r.pad = c.qubit("qpad", j);
    r.addr = c.register_qubits("addr" + std::to_string(j));
    r.data = c.register_qubits("out" + std::to_string(j));
    r.flag = c.qubit("qflag", j);
    slots.push_back(r);
  }
  for (std::uint32_t p = big_n + k; p < m; ++p) {
    Record r = block("padrec", p - big_n - k);
    c.prepare_one(r.pad);
    slots.push_back(r);
  }

  std::vector<std::vector<Gate>> compare(comparators.size());
  std::vector<std::vector<Gate>> swap(comparators.size());
  for (std::size_t ci = 0; ci < comparators.size(); ++ci) {
    const auto& lo = slots[comparators[ci].first];
    const auto& hi = slots[comparators[ci].second];
    const QubitRef cmp = c.qubit("cmp", static_cast<std::uint32_t>(ci));
    emit_compare(compare[ci], lo, hi, cmp);
    const Word a = lo.all();
    const Word b = hi.all();
    for (std::size_t x = 0; x < a.size(); ++x) swap[ci].push_back(Gate::cswap(pos(cmp), a[x], b[x]));
  }
  for (std::size_t ci = 0; ci < comparators.size(); ++ci) {
    c.append_all(compare[ci]);
    c.append_all(swap[ci]);
  }
  // Cascade: a record takes the data of its predecessor when both hold the
  // same address and it is a query.
  for (std::uint32_t p = 0; p + 1 < m; ++p) {
    const Record& a = slots[p];
    const Record& b = slots[p + 1];
    Word ea{a.pad};
    Word eb{b.pad};
    ea.insert(ea.end(), a.addr.begin(), a.addr.end());
    eb.insert(eb.end(), b.addr.begin(), b.addr.end());
    for (std::size_t x = 0; x < ea.size(); ++x) c.append(Gate::cnot(pos(ea[x]), eb[x]));
    for (std::uint32_t d = 0; d < w; ++d) {
      std::vector<Control> cs;
      for (auto q : eb) cs.push_back(neg(q));
      cs.push_back(neg(b.flag));
      cs.push_back(pos(a.data[d]));
      c.append(Gate::multi_cnot(cs, b.data[d]));
    }
    for (std::size_t x = ea.size(); x-- > 0;) c.append(Gate::cnot(pos(ea[x]), eb[x]));
  }
  for (std::size_t ci = comparators.size(); ci-- > 0;) {
    c.append_all(swap[ci]);
    c.append_all(compare[ci]);
  }
  return c;
}

BuildResult build(const BuilderSpec& spec, const BitTable& table) {
  const Uncompute u = spec.effective_uncompute();
  if (u == Uncompute::MeasurementBased && spec.kind != BuilderKind::SelectSwap &&
      spec.kind != BuilderKind::Recursive) {
    throw BuilderError("measurement_based uncompute is only valid for select_swap and recursive");
  }
  if (spec.controlled && spec.kind != BuilderKind::Recursive) {
    throw BuilderError("controlled is only valid for recursive");
  }
  BuildResult r;
  r.spec = spec;
  r.table_size = table.size();
  r.padded_size = table.size();
  r.word_width = table.word_width();
  const std::uint32_t pow2 = std::uint32_t{1} << address_bits(table.size());
  switch (spec.kind) {
    case BuilderKind::Unary:
      r.circuit = build_unary(table);
      break;
    case BuilderKind::Recursive:
      r.circuit = build_recursive(table, spec.controlled, u);
      r.padded_size = pow2;
      break;
    case BuilderKind::BucketBrigade:
      r.circuit = build_bucket_brigade(table);
      r.padded_size = pow2;
      r.params["routing_ancillas"] = 2 * (pow2 - 1);
      r.params["cswap_closed_form"] = bucket_brigade_cswaps(address_bits(table.size()),
                                                            table.word_width());
      break;
    case BuilderKind::BadReadoutBB:
      r.circuit = build_bad_readout_bb(table);
      r.padded_size = pow2;
      r.params["routing_ancillas"] = 2 * (pow2 - 1);
      break;
    case BuilderKind::SelectSwap: {
      check_page_log(table.size(), spec.page_log);
      r.circuit = build_select_swap(table, spec.page_log, u);
      const std::uint32_t page = std::uint32_t{1} << spec.page_log;
      r.params["page_log"] = spec.page_log;
      r.params["page_size"] = page;
      r.params["pages"] = (table.size() + page - 1) / page;
      r.params["page_word_bits"] = page * table.word_width();
      break;
    }
    case BuilderKind::FanoutSwapQraqm: {
      const std::uint32_t n = address_bits(table.size());
      r.circuit = build_fanout_swap_qraqm(n, table.word_width(), spec.swap_variant);
      r.padded_size = pow2;
      r.params["address_bits"] = n;
      r.params["swap_ancillas"] = swap_ancillas(n);
      break;
    }
    case BuilderKind::ParallelSorted: {
      r.circuit = build_parallel_sorted(table, spec.query_count);
      const std::uint32_t records = table.size() + spec.query_count;
      const std::uint32_t m = std::uint32_t{1} << ceil_log2(records);
      const double lg = records > 1 ? std::log2(static_cast<double>(records)) : 0.0;
      r.params["query_count"] = spec.query_count;
      r.params["records"] = m;
      r.params["comparators"] = bitonic_comparators(m).size();
      r.params["hypercube_comparator_estimate"] = static_cast<double>(records) * lg;
      break;
    }
  }
  if (r.padded_size != r.table_size) r.params["padded_from"] = r.table_size;
  return r;
}

}  // namespace qramwb
