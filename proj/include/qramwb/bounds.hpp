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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qramwb {

class BoundsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lg of binomial(n, k) through log-gamma.
double log2_binomial(double n, double k);

struct CircuitCountParams {
  std::uint64_t W = 1;  // qubits
  std::uint64_t D = 1;  // depth
  std::uint64_t G = 0;  // gates
  std::uint64_t g = 1;  // gate-set size
  std::uint64_t k = 1;  // max fan-in
};

/// lg( binomial(DW, min(kG, DW)) * (Wg)^G ).
double log2_circuit_count(const CircuitCountParams& p);

struct MinGatesResult {
  bool feasible = false;
  std::uint64_t gates = 0;
  double capacity = 0.0;       // k G lg(DWg / (G sqrt k)) at the returned G
  double capacity_prev = 0.0;  // same at G - 1
  std::uint64_t search_limit = 0;
};

/// Capacity k G lg(DWg / (G sqrt k)).
double gate_capacity(double gates, double w, double d, double g, double k);

/// Smallest G with N <= capacity(G), searched over the increasing region
/// G <= min(DWg / (e sqrt k), DW).
MinGatesResult min_gates_for_table(double n, std::uint64_t w, std::uint64_t d, std::uint64_t g,
                                   std::uint64_t k);

struct BallisticParams {
  double n = 1;  // Hamiltonian terms
  double t = 1;  // evolution time
  double E = 1;  // max term energy
  double W = 2;  // qubits
  double N = 1;  // table size
};

enum class BallisticMode { Summary, Stirling };

struct BallisticResult {
  BallisticMode mode = BallisticMode::Summary;
  double lhs = 0.0;  // bits (summary) or nats (Stirling)
  double rhs = 0.0;  // N, or N ln 2
  bool satisfied = false;
  double slack = 0.0;  // lhs - rhs
  double num_terms = 0.0;
};

/// Summary: lhs = ntE + n lg W against N. Stirling: lhs = n ln(terms) +
/// ntE + n ln(2 tE e) against ln 2^N, with terms = sum_j 4^j C(W, j) over
/// j = 1..locality unless given.
BallisticResult ballistic_constraint(const BallisticParams& p,
                                     BallisticMode mode = BallisticMode::Summary,
                                     std::uint32_t locality = 2, double num_terms = 0.0);

struct DistanceFloor {
  double floor = 0.0;
  double lower = 0.0;
};

/// eps floor = ln(delta e^-t + 1) / t and its lower bound
/// (delta / t) e^-t (1 - delta e^-t).
DistanceFloor hamiltonian_distance_floor(double delta, double t);

struct LemmaCheck {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double max_ratio = 0.0;  // largest floor / eps seen
};

/// Random Hermitian pairs of norm <= 1; checks eps >= floor(delta, t).
LemmaCheck verify_hamiltonian_lemma(std::uint32_t dim, std::uint64_t trials, double t,
                                    std::uint64_t seed);

/// Commuting diagonal pair differing by eps on one eigenvalue: returns
/// floor(delta, t) / eps with delta = |e^{i t eps} - 1|.
double hamiltonian_diagonal_ratio(double t, double eps);

struct DistillationCap {
  double value = 0.0;
  double raw = 0.0;
  bool vacuous = false;
};

/// min(1, 3/4 + 2 l sqrt(d) / N).
DistillationCap distillation_fidelity_cap(double d, double n, double ell = 1.0);

/// Pure state on address (x) output: amplitude of |j>|b> at index 2j + b.
using PureState = std::vector<std::complex<double>>;

struct IndistinguishableResult {
  std::vector<std::uint32_t> indices;
  std::vector<double> deltas;
  double sum_delta = 0.0;
  double stated_bound = 0.0;   // 2 l sqrt(d) / N
  double derived_bound = 0.0;  // 2 d sqrt(l / N)
  bool holds = false;          // sum_delta <= stated_bound
  bool holds_derived = false;
};

IndistinguishableResult verify_indistinguishable_tables(const std::vector<PureState>& states,
                                                        std::uint32_t ell);

/// d complex-Gaussian states over N addresses, normalized.
std::vector<PureState> random_query_states(std::uint32_t d, std::uint32_t n, std::uint64_t seed);
/// d copies of the uniform superposition with output |0>.
std::vector<PureState> uniform_query_states(std::uint32_t d, std::uint32_t n);

}  // namespace qramwb
