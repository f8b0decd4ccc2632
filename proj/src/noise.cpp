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

#include "qramwb/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <istream>
#include <random>
#include <sstream>
#include <thread>

#include "qramwb/rng.hpp"
#include "qramwb/table.hpp"

namespace qramwb {

namespace {

using Bits = std::vector<std::uint64_t>;

inline bool get_bit(const Bits& b, std::uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1U; }
inline void flip_bit(Bits& b, std::uint32_t i) { b[i >> 6] ^= std::uint64_t{1} << (i & 63); }

bool is_whole_lifetime(const std::string& name) {
  return name == "addr" || name == "out" || name == "ctl" || name == "mem";
}

std::uint32_t tree_level(std::uint32_t k) {
  std::uint32_t level = 0;
  while (((std::uint32_t{1} << (level + 1)) - 1) <= k) ++level;
  return level;
}

// Geometric skipping over `slots` Bernoulli(p) trials; calls f(slot) for
// every success in increasing order.
template <class F>
void for_each_success(std::uint64_t slots, double p, StreamRng& rng, F&& f) {
  if (p <= 0.0 || slots == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t s = 0; s < slots; ++s) f(s);
    return;
  }
  const double denom = std::log1p(-p);
  std::uint64_t s = 0;
  while (true) {
    const double u = 1.0 - rng.uniform();
    const double gap = std::floor(std::log(u) / denom);
    if (gap >= static_cast<double>(slots - s)) return;
    s += static_cast<std::uint64_t>(gap);
    f(s);
    if (++s >= slots) return;
  }
}

// Runs `body(begin, end, worker)` over [0, total) split into contiguous
// blocks, one per worker.
void parallel_blocks(std::uint64_t total, unsigned workers,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body) {
  workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total)));
  if (workers <= 1) {
    body(0, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t b = std::min(total, w * chunk);
    const std::uint64_t e = std::min(total, b + chunk);
    pool.emplace_back(body, b, e, w);
  }
  for (auto& t : pool) t.join();
}

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

}  // namespace

void NoiseModel::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw NoiseError("error probability p must be in [0, 1]");
  if (!bitflip && !phaseflip) throw NoiseError("noise kinds must be nonempty");
}

NoisyCircuit::NoisyCircuit(const Circuit& circuit, std::uint32_t protected_levels)
    : width_(circuit.width()) {
  if (!circuit.has_register("addr") || !circuit.has_register("out")) {
    throw NoiseError("noisy queries need 'addr' and 'out' registers");
  }
  const auto& regs = circuit.registers();
  std::vector<std::uint8_t> whole(width_, 0);
  std::vector<std::uint8_t> shielded(width_, 0);
  for (std::uint32_t r = 0; r < regs.size(); ++r) {
    const auto off = circuit.register_offset(r);
    for (std::uint32_t i = 0; i < regs[r].size; ++i) {
      if (is_whole_lifetime(regs[r].name)) whole[off + i] = 1;
      if ((regs[r].name == "c" || regs[r].name == "r") && tree_level(i) < protected_levels) {
        shielded[off + i] = 1;
      }
    }
  }
  for (auto q : circuit.register_qubits("addr")) addr_.push_back(static_cast<std::uint32_t>(circuit.flat_index(q)));
  for (auto q : circuit.register_qubits("out")) out_.push_back(static_cast<std::uint32_t>(circuit.flat_index(q)));
  if (circuit.has_register("ctl")) {
    for (auto q : circuit.register_qubits("ctl")) ctl_.push_back(static_cast<std::uint32_t>(circuit.flat_index(q)));
  }

  const std::size_t layers = circuit.layers().size();
  std::vector<std::int64_t> first(width_, -1);
  std::vector<std::int64_t> last(width_, -1);
  for (std::size_t l = 0; l < layers; ++l) {
    layer_begin_.push_back(static_cast<std::uint32_t>(ops_.size()));
    for (const auto& g : circuit.layers()[l]) {
      Op op{g.kind, g.parity, static_cast<std::uint32_t>(qubits_.size()),
            static_cast<std::uint32_t>(g.operands.size()),
            static_cast<std::uint32_t>(g.num_controls())};
      for (std::size_t i = 0; i < g.operands.size(); ++i) {
        const auto f = static_cast<std::uint32_t>(circuit.flat_index(g.operands[i]));
        qubits_.push_back(f);
        negated_.push_back(i < g.negated.size() && g.negated[i] ? 1 : 0);
        if (first[f] < 0) first[f] = static_cast<std::int64_t>(l);
        last[f] = static_cast<std::int64_t>(l);
      }
      ops_.push_back(op);
    }
  }
  layer_begin_.push_back(static_cast<std::uint32_t>(ops_.size()));

  for (std::size_t l = 0; l < layers; ++l) {
    live_begin_.push_back(live_.size());
    for (std::uint32_t q = 0; q < width_; ++q) {
      if (shielded[q]) continue;
      const auto ll = static_cast<std::int64_t>(l);
      if (whole[q] || (first[q] >= 0 && first[q] <= ll && ll <= last[q])) live_.push_back(q);
    }
  }
  live_begin_.push_back(live_.size());

  initial_.assign((width_ + 63) / 64, 0);
  for (const auto& q : circuit.prepared()) flip_bit(initial_, static_cast<std::uint32_t>(circuit.flat_index(q)));
  for (auto q : ctl_) flip_bit(initial_, q);
}

void apply_flat_op(const NoisyCircuit& c, std::size_t i, Bits& bits) {
  const auto& op = c.ops()[i];
  const std::uint32_t* q = c.qubits().data() + op.first;
  const std::uint8_t* neg = c.negated().data() + op.first;
  auto controls_on = [&]() {
    for (std::uint32_t k = 0; k < op.controls; ++k) {
      if (get_bit(bits, q[k]) == static_cast<bool>(neg[k])) return false;
    }
    return true;
  };
  switch (op.kind) {
    case GateKind::X:
      flip_bit(bits, q[0]);
      break;
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::AND_COMPUTE:
    case GateKind::AND_UNCOMPUTE:
    case GateKind::MULTI_CNOT:
      if (controls_on()) flip_bit(bits, q[op.count - 1]);
      break;
    case GateKind::CSWAP:
      if (controls_on() && get_bit(bits, q[1]) != get_bit(bits, q[2])) {
        flip_bit(bits, q[1]);
        flip_bit(bits, q[2]);
      }
      break;
    case GateKind::FANOUT_CNOT:
      if (op.parity) {
        bool parity = false;
        for (std::uint32_t k = 1; k < op.count; ++k) parity ^= get_bit(bits, q[k]);
        if (parity) flip_bit(bits, q[0]);
      } else if (controls_on()) {
        for (std::uint32_t k = 1; k < op.count; ++k) flip_bit(bits, q[k]);
      }
      break;
    case GateKind::H:
    case GateKind::CLASSICAL_PHASE_FIXUP:
      break;
  }
}

TrialOutcome NoisyCircuit::run(std::uint64_t address, std::uint64_t expected,
                               const NoiseModel& noise, std::uint64_t trial) const {
  TrialOutcome out;
  StreamRng rng(noise.seed, trial);
  // (slot, is_phase)
  std::vector<std::pair<std::uint64_t, bool>> events;
  if (noise.bitflip) {
    for_each_success(live_.size(), noise.p, rng, [&](std::uint64_t s) { events.emplace_back(s, false); });
  }
  if (noise.phaseflip) {
    for_each_success(live_.size(), noise.p, rng, [&](std::uint64_t s) { events.emplace_back(s, true); });
    std::sort(events.begin(), events.end());
  }
  out.errors = static_cast<std::uint32_t>(events.size());
  if (events.empty()) {
    out.output = expected;
    return out;
  }
  Bits bits = initial_;
  for (std::size_t b = 0; b < addr_.size(); ++b) {
    if ((address >> b) & 1U) flip_bit(bits, addr_[b]);
  }
  std::size_t e = 0;
  const std::size_t layers = layer_count();
  for (std::size_t l = 0; l < layers; ++l) {
    while (e < events.size() && events[e].first < live_begin_[l + 1]) {
      const std::uint32_t q = live_[events[e].first];
      if (events[e].second) {
        if (get_bit(bits, q)) out.phase_flipped = !out.phase_flipped;
      } else {
        flip_bit(bits, q);
      }
      ++e;
    }
    for (std::uint32_t i = layer_begin_[l]; i < layer_begin_[l + 1]; ++i) apply_flat_op(*this, i, bits);
  }
  for (std::size_t b = 0; b < out_.size(); ++b) {
    if (get_bit(bits, out_[b])) out.output |= std::uint64_t{1} << b;
  }
  for (std::size_t b = 0; b < addr_.size(); ++b) {
    if (get_bit(bits, addr_[b]) != static_cast<bool>((address >> b) & 1U)) out.address_intact = false;
  }
  out.correct = out.address_intact && out.output == expected;
  return out;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

unsigned worker_count() {
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QRAMWB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

InfidelityEstimate estimate_infidelity(const BuilderSpec& spec, std::uint32_t n,
                                       const NoiseModel& noise, std::uint64_t trials) {
  noise.validate();
  if (spec.kind == BuilderKind::ParallelSorted || spec.kind == BuilderKind::FanoutSwapQraqm) {
    throw NoiseError("noise estimates support single-query QRACM builders only");
  }
  const BitTable table = random_table(n, 1, noise.seed);
  const BuildResult built = build(spec, table);
  const NoisyCircuit nc(built.circuit, noise.protected_levels);
  const BitTable padded = table.padded(std::uint32_t{1} << address_bits(n));

  const unsigned workers = worker_count();
  std::vector<std::uint64_t> fails(workers, 0);
  std::vector<std::uint64_t> phases(workers, 0);
  const std::uint64_t address_seed = splitmix64(noise.seed ^ 0x61646472ULL);
  parallel_blocks(trials, workers, [&](std::uint64_t b, std::uint64_t e, unsigned w) {
    for (std::uint64_t t = b; t < e; ++t) {
      StreamRng pick(address_seed, t);
      const auto address = static_cast<std::uint32_t>(pick() % n);
      const auto outcome = nc.run(address, padded.word(address), noise, t);
      if (!outcome.correct) ++fails[w];
      if (outcome.phase_flipped) ++phases[w];
    }
  });

  InfidelityEstimate est;
  est.builder = std::string(builder_kind_name(spec.kind));
  est.n = n;
  est.p = noise.p;
  est.trials = trials;
  est.seed = noise.seed;
  for (auto f : fails) est.failures += f;
  for (auto f : phases) est.phase_flips += f;
  est.infidelity = trials == 0 ? 0.0 : static_cast<double>(est.failures) / static_cast<double>(trials);
  est.ci = noise.p == 0.0 ? Interval{0.0, 0.0} : wilson_interval(est.failures, trials);
  return est;
}

std::string_view fit_model_name(FitModel m) {
  return m == FitModel::PowerInN ? "power_in_N" : "power_in_logN";
}

FitModel fit_model_from_name(std::string_view name) {
  if (name == "power_in_N") return FitModel::PowerInN;
  if (name == "power_in_logN") return FitModel::PowerInLogN;
  throw NoiseError("unknown fit model '" + std::string(name) + "'");
}

ScalingFit fit_power_law(const std::vector<ScalingPoint>& points, FitModel model) {
  if (points.size() < 2) throw NoiseError("fit needs at least 2 points");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& pt : points) {
    if (!(pt.y > 0.0)) throw NoiseError("fit needs positive y values");
    if (model == FitModel::PowerInN) {
      if (!(pt.n > 0.0)) throw NoiseError("fit needs positive N");
      xs.push_back(std::log(pt.n));
    } else {
      if (!(pt.n > 1.0)) throw NoiseError("power_in_logN needs N > 1");
      xs.push_back(std::log(std::log2(pt.n)));
    }
    ys.push_back(std::log(pt.y));
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0;
  double sxy = 0;
  double syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx < 1e-12) throw NoiseError("degenerate x-range in fit");
  ScalingFit fit;
  fit.points = points;
  fit.model = model;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double sse = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
    sse += r * r;
  }
  fit.r_squared = syy > 0 ? 1.0 - sse / syy : 1.0;
  fit.stderr_exponent = xs.size() > 2 ? std::sqrt(sse / (k - 2) / sxx) : 0.0;
  return fit;
}

ScalingFit fit_scaling(const std::vector<ScalingPoint>& points, FitModel model) {
  if (points.size() < 4) throw NoiseError("scaling fit needs at least 4 points");
  for (const auto& pt : points) {
    if (!(pt.y > 0.0 && pt.y < 0.5)) {
      throw NoiseError("infidelity " + format_double(pt.y, 6) + " at N=" + format_double(pt.n, 10) +
                       " outside (0, 0.5)");
    }
  }
  return fit_power_law(points, model);
}

nlohmann::ordered_json fit_to_json(const ScalingFit& fit) {
  nlohmann::ordered_json j;
  j["model"] = fit_model_name(fit.model);
  j["exponent"] = fit.exponent;
  j["stderr"] = fit.stderr_exponent;
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  auto pts = nlohmann::ordered_json::array();
  for (const auto& p : fit.points) pts.push_back({p.n, p.y, p.ci_halfwidth});
  j["points"] = pts;
  return j;
}

PersistentCurve simulate_persistent_accumulation(std::uint32_t n, double p, std::uint32_t queries,
                                                 std::uint64_t trials, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw NoiseError("error probability p must be in [0, 1]");
  if (n < 2 || (n & (n - 1)) != 0) throw NoiseError("persistent model needs N a power of two >= 2");
  const BitTable table = random_table(n, 1, seed);
  const Circuit circuit = build_bucket_brigade(table);
  const NoisyCircuit nc(circuit);
  const std::uint32_t nodes = n - 1;
  std::vector<std::uint32_t> cq;
  std::vector<std::uint32_t> rq;
  for (auto q : circuit.register_qubits("c")) cq.push_back(static_cast<std::uint32_t>(circuit.flat_index(q)));
  for (auto q : circuit.register_qubits("r")) rq.push_back(static_cast<std::uint32_t>(circuit.flat_index(q)));
  std::vector<std::uint32_t> routing = cq;
  routing.insert(routing.end(), rq.begin(), rq.end());
  std::vector<std::uint32_t> addr;
  for (auto q : circuit.register_qubits("addr")) addr.push_back(static_cast<std::uint32_t>(circuit.flat_index(q)));
  const std::size_t layers = nc.layer_count();

  const unsigned workers = worker_count();
  std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(queries, 0));
  parallel_blocks(trials, workers, [&](std::uint64_t b, std::uint64_t e, unsigned w) {
    for (std::uint64_t t = b; t < e; ++t) {
      StreamRng rng(seed, t);
      Bits tree(nc.initial().size(), 0);
      for (std::uint32_t q = 0; q < queries; ++q) {
        Bits bits = nc.initial();
        for (auto f : routing) {
          if (get_bit(tree, f)) flip_bit(bits, f);
        }
        const std::uint64_t address = rng() % n;
        for (std::size_t i = 0; i < addr.size(); ++i) {
          if ((address >> i) & 1U) flip_bit(bits, addr[i]);
        }
        std::vector<std::pair<std::uint64_t, std::uint32_t>> events;  // (layer, qubit)
        for_each_success(routing.size(), p, rng, [&](std::uint64_t s) {
          events.emplace_back(rng() % layers, routing[s]);
        });
        std::sort(events.begin(), events.end());
        std::size_t ev = 0;
        for (std::size_t l = 0; l < layers; ++l) {
          while (ev < events.size() && events[ev].first == l) flip_bit(bits, events[ev++].second);
          for (std::uint32_t i = nc.layer_begin()[l]; i < nc.layer_begin()[l + 1]; ++i) apply_flat_op(nc, i, bits);
        }
        std::uint64_t corrupted = 0;
        for (std::uint32_t k = 0; k < nodes; ++k) {
          if (get_bit(bits, cq[k]) || get_bit(bits, rq[k])) ++corrupted;
        }
        counts[w][q] += corrupted;
        tree = std::move(bits);
      }
    }
  });
  PersistentCurve curve;
  curve.n = n;
  curve.p = p;
  curve.trials = trials;
  for (std::uint32_t q = 0; q < queries; ++q) {
    std::uint64_t total = 0;
    for (const auto& c : counts) total += c[q];
    curve.fraction.push_back(static_cast<double>(total) /
                             (static_cast<double>(trials) * static_cast<double>(nodes)));
  }
  return curve;
}

DerangementResult simulate_derangement(std::uint32_t m, double p, std::uint64_t trials,
                                       std::uint64_t seed) {
  if (m < 2) throw NoiseError("derangement needs m >= 2 copies");
  if (!(p >= 0.0 && p <= 1.0)) throw NoiseError("error probability p must be in [0, 1]");
  const unsigned workers = worker_count();
  std::vector<std::uint64_t> pass(workers, 0);
  std::vector<std::uint64_t> wrong(workers, 0);
  const double mm = static_cast<double>(m) * m;
  parallel_blocks(trials, workers, [&](std::uint64_t b, std::uint64_t e, unsigned w) {
    for (std::uint64_t t = b; t < e; ++t) {
      StreamRng rng(seed, t);
      std::binomial_distribution<std::uint32_t> errs(m, p);
      const double k = errs(rng);
      const double good = (m - k) * (m - k) + k;
      if (rng.uniform() >= good / mm) continue;
      ++pass[w];
      if (k > 0 && rng.uniform() < k / good) ++wrong[w];
    }
  });
  DerangementResult r;
  r.m = m;
  r.p = p;
  r.trials = trials;
  for (unsigned w = 0; w < workers; ++w) {
    r.passed += pass[w];
    r.wrong_after_pass += wrong[w];
  }
  r.herald_pass_rate = trials == 0 ? 1.0 : static_cast<double>(r.passed) / static_cast<double>(trials);
  r.conditional_infidelity =
      r.passed == 0 ? 0.0 : static_cast<double>(r.wrong_after_pass) / static_cast<double>(r.passed);
  return r;
}

std::string noise_csv_row(const InfidelityEstimate& e) {
  std::ostringstream os;
  os << e.builder << ',' << e.n << ',' << format_double(e.p, 6) << ',' << e.trials << ','
     << e.seed << ',' << format_double(e.infidelity, 10) << ',' << format_double(e.ci.lo, 10)
     << ',' << format_double(e.ci.hi, 10);
  return os.str();
}

std::vector<InfidelityEstimate> read_noise_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kNoiseCsvHeader) {
    throw NoiseError("noise CSV header must be '" + std::string(kNoiseCsvHeader) + "'");
  }
  std::vector<InfidelityEstimate> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw NoiseError("noise CSV row needs 8 columns: '" + line + "'");
    try {
      InfidelityEstimate e;
      e.builder = f[0];
      e.n = static_cast<std::uint32_t>(std::stoul(f[1]));
      e.p = std::stod(f[2]);
      e.trials = std::stoull(f[3]);
      e.seed = std::stoull(f[4]);
      e.infidelity = std::stod(f[5]);
      e.ci = {std::stod(f[6]), std::stod(f[7])};
      e.failures = static_cast<std::uint64_t>(std::llround(e.infidelity * static_cast<double>(e.trials)));
      rows.push_back(e);
    } catch (const std::logic_error&) {
      throw NoiseError("malformed noise CSV row: '" + line + "'");
    }
  }
  return rows;
}

}  // namespace qramwb
