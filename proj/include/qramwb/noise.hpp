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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qramwb/builders.hpp"
#include "qramwb/circuit.hpp"

namespace qramwb {

class NoiseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Independent Pauli errors on every live qubit before every layer.
struct NoiseModel {
  double p = 0.0;
  bool bitflip = true;
  bool phaseflip = false;
  bool persistent = false;
  std::uint64_t seed = 0;
  /// Routing-tree levels (from the root) kept error free.
  std::uint32_t protected_levels = 0;

  void validate() const;
};

struct TrialOutcome {
  std::uint64_t output = 0;
  bool correct = true;         // right output and address intact
  bool address_intact = true;
  std::uint32_t errors = 0;
  bool phase_flipped = false;  // net sign from phase errors
};

/// Circuit compiled to flat bit operations with per-layer live-qubit lists.
/// Data registers (addr, out, ctl, mem) are live for the whole circuit;
/// every other qubit from the first to the last layer that touches it.
class NoisyCircuit {
 public:
  explicit NoisyCircuit(const Circuit& circuit, std::uint32_t protected_levels = 0);

  /// One trajectory for a basis query. `trial` selects the random stream.
  TrialOutcome run(std::uint64_t address, std::uint64_t expected, const NoiseModel& noise,
                   std::uint64_t trial) const;

  std::uint64_t error_slots() const { return live_.size(); }
  std::size_t layer_count() const { return layer_begin_.size() - 1; }

  struct Op {
    GateKind kind;
    bool parity;
    std::uint32_t first;
    std::uint32_t count;
    std::uint32_t controls;
  };

  // Shared with the persistent-error model.
  const std::vector<Op>& ops() const { return ops_; }
  const std::vector<std::uint32_t>& qubits() const { return qubits_; }
  const std::vector<std::uint8_t>& negated() const { return negated_; }
  const std::vector<std::uint32_t>& layer_begin() const { return layer_begin_; }
  const std::vector<std::uint64_t>& initial() const { return initial_; }
  std::size_t width() const { return width_; }

 private:
  std::size_t width_ = 0;
  std::vector<Op> ops_;
  std::vector<std::uint32_t> qubits_;
  std::vector<std::uint8_t> negated_;
  std::vector<std::uint32_t> layer_begin_;  // op index per layer, plus end
  std::vector<std::uint32_t> live_;         // flat qubit per error slot
  std::vector<std::uint64_t> live_begin_;   // slot index per layer, plus end
  std::vector<std::uint64_t> initial_;
  std::vector<std::uint32_t> addr_;
  std::vector<std::uint32_t> out_;
  std::vector<std::uint32_t> ctl_;
};

/// Applies op `i` of `c` to the packed bit state; AND_UNCOMPUTE acts as
/// its XOR form.
void apply_flat_op(const NoisyCircuit& c, std::size_t i, std::vector<std::uint64_t>& bits);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval at 95%.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct InfidelityEstimate {
  std::string builder;
  std::uint32_t n = 0;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t failures = 0;
  std::uint64_t phase_flips = 0;
  double infidelity = 0.0;
  Interval ci;
};

/// Fraction of trials with a wrong output bit or a disturbed address, over
/// uniformly random addresses and the table random_table(N, 1, seed).
InfidelityEstimate estimate_infidelity(const BuilderSpec& spec, std::uint32_t n,
                                       const NoiseModel& noise, std::uint64_t trials);

/// Worker count: QRAMWB_THREADS if set, else hardware concurrency.
unsigned worker_count();

enum class FitModel { PowerInN, PowerInLogN };

std::string_view fit_model_name(FitModel m);
FitModel fit_model_from_name(std::string_view name);

struct ScalingPoint {
  double n = 0.0;
  double y = 0.0;
  double ci_halfwidth = 0.0;
};

struct ScalingFit {
  std::vector<ScalingPoint> points;
  FitModel model = FitModel::PowerInN;
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double stderr_exponent = 0.0;
};

/// Least squares of ln y on ln N (or ln lg N). Needs >= 4 points with y in
/// (0, 0.5).
ScalingFit fit_scaling(const std::vector<ScalingPoint>& points, FitModel model);
/// Same fit without the infidelity range check (for generic curves).
ScalingFit fit_power_law(const std::vector<ScalingPoint>& points, FitModel model);

nlohmann::ordered_json fit_to_json(const ScalingFit& fit);

struct PersistentCurve {
  std::uint32_t n = 0;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::vector<double> fraction;  // mean corrupted-node fraction after query q+1
};

/// Circuit-level bucket brigade whose routing tree is never reset between
/// queries; every routing qubit suffers a bit flip with probability p per
/// query, at a uniformly random layer.
PersistentCurve simulate_persistent_accumulation(std::uint32_t n, double p, std::uint32_t queries,
                                                 std::uint64_t trials, std::uint64_t seed);

struct DerangementResult {
  std::uint32_t m = 0;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t passed = 0;
  std::uint64_t wrong_after_pass = 0;
  double herald_pass_rate = 1.0;
  double conditional_infidelity = 0.0;
};

/// Channel-level derangement model: k ~ Binomial(m, p) slots err; the
/// herald passes with probability ((m-k)^2 + k) / m^2, after which the
/// output is wrong with probability k / ((m-k)^2 + k).
DerangementResult simulate_derangement(std::uint32_t m, double p, std::uint64_t trials,
                                       std::uint64_t seed);

inline constexpr const char* kNoiseCsvHeader = "builder,N,p,trials,seed,infidelity,ci_lo,ci_hi";

std::string noise_csv_row(const InfidelityEstimate& e);
/// Parses rows written by noise_csv_row (header required).
std::vector<InfidelityEstimate> read_noise_csv(std::istream& in);

}  // namespace qramwb
