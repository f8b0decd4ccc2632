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
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "qramwb/bounds.hpp"

using namespace qramwb;
using boost::multiprecision::cpp_int;

namespace {

cpp_int binom(unsigned n, unsigned k) {
  cpp_int r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double exact_log2(const cpp_int& v) {
  // lg v = lg(top 53 bits) + shift
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(v)) + 1;
  const unsigned shift = bits > 60 ? bits - 60 : 0;
  const cpp_int top = v >> shift;
  return std::log2(top.convert_to<double>()) + shift;
}

double oracle_circuit_count(unsigned W, unsigned D, unsigned G, unsigned g, unsigned k) {
  const unsigned dw = D * W;
  cpp_int v = binom(dw, std::min(k * G, dw));
  cpp_int base = W * g;
  for (unsigned i = 0; i < G; ++i) v *= base;
  return exact_log2(v);
}

}  // namespace

TEST_CASE("circuit count trivial cases") {
  CHECK(log2_circuit_count({1, 1, 1, 1, 1}) == doctest::Approx(0.0));
  CHECK(log2_circuit_count({5, 3, 0, 2, 2}) == 0.0);
  CHECK(log2_circuit_count({4, 3, 5, 3, 2}) ==
        doctest::Approx(std::log2(66.0) + 5 * std::log2(12.0)).epsilon(1e-12));
  CHECK_THROWS_AS(log2_circuit_count({2, 2, 5, 1, 1}), BoundsError);
  CHECK_THROWS_AS(log2_circuit_count({2, 2, 1, 1, 3}), BoundsError);
  CHECK(std::isfinite(log2_circuit_count({1000000000, 1, 1000, 4, 3})));
}

TEST_CASE("circuit count matches big-integer oracle on DW <= 64") {
  double worst = 0.0;
  for (unsigned W = 1; W <= 64; ++W) {
    for (unsigned D = 1; D * W <= 64; ++D) {
      for (unsigned G = 0; G <= D * W; ++G) {
        for (unsigned k = 1; k <= std::min(W, 3u); ++k) {
          for (unsigned g : {1u, 2u, 7u}) {
            const double got = log2_circuit_count({W, D, G, g, k});
            const double want = G == 0 ? 0.0 : oracle_circuit_count(W, D, G, g, k);
            worst = std::max(worst, std::abs(got - want));
          }
        }
      }
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("min gates: smallest satisfying G, checked by linear scan") {
  CHECK(min_gates_for_table(1, 16, 16, 4, 2).gates == 1);
  for (double n : {1.0, 10.0, 100.0, 1000.0, 5000.0}) {
    const auto r = min_gates_for_table(n, 64, 64, 8, 3);
    REQUIRE(r.feasible);
    std::uint64_t scan = 0;
    for (std::uint64_t g = 1; g <= r.search_limit; ++g) {
      if (gate_capacity(static_cast<double>(g), 64, 64, 8, 3) >= n) {
        scan = g;
        break;
      }
    }
    CHECK(r.gates == scan);
    CHECK(r.capacity >= n);
    CHECK(r.capacity_prev < n);
  }
}

TEST_CASE("min gates at the large example is pinned near the analytic estimate") {
  const double n = std::pow(2.0, 20);
  const std::uint64_t W = 1ULL << 21, D = 1ULL << 21;
  const auto r = min_gates_for_table(n, W, D, 16, 3);
  REQUIRE(r.feasible);
  const double floor = n / (3 * std::log2(double(D) * double(W) * 16));
  CHECK(double(r.gates) >= floor);
  std::uint64_t scan = 0;
  for (std::uint64_t g = static_cast<std::uint64_t>(floor); g <= r.gates; ++g) {
    if (gate_capacity(double(g), double(W), double(D), 16, 3) >= n) {
      scan = g;
      break;
    }
  }
  CHECK(scan == r.gates);
}

TEST_CASE("min gates grows linearly in N") {
  std::vector<double> xs, ys;
  std::uint64_t prev = 0;
  for (int e = 10; e <= 24; ++e) {
    const double n = std::pow(2.0, e);
    const auto r = min_gates_for_table(n, 1ULL << 26, 1ULL << 26, 16, 3);
    REQUIRE(r.feasible);
    CHECK(r.gates >= prev);
    if (prev) CHECK(double(r.gates) <= 2.2 * double(prev));
    prev = r.gates;
    xs.push_back(std::log(n));
    ys.push_back(std::log(double(r.gates)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  CHECK(slope >= 0.9);
  CHECK(slope <= 1.1);
}

TEST_CASE("min gates flags infeasible parameters") {
  const auto r = min_gates_for_table(1e6, 4, 4, 2, 1);
  CHECK(!r.feasible);
}

TEST_CASE("ballistic constraint") {
  const auto a = ballistic_constraint({64, 1, 1, 2, 64});
  CHECK(a.lhs == doctest::Approx(128));
  CHECK(a.satisfied);
  const auto b = ballistic_constraint({1, 1, 1, 2, 100});
  CHECK(b.lhs == doctest::Approx(2));
  CHECK(!b.satisfied);
  CHECK(b.slack == doctest::Approx(-98));
  // lhs fixed at 10 while N doubles: flips between N = 8 and N = 16.
  CHECK(ballistic_constraint({5, 1, 1, 2, 8}).satisfied);
  CHECK(ballistic_constraint({5, 1, 1, 2, 10}).satisfied);
  CHECK(!ballistic_constraint({5, 1, 1, 2, 16}).satisfied);
  const auto s = ballistic_constraint({4, 1, 1, 8, 10}, BallisticMode::Stirling, 2);
  CHECK(s.num_terms == doctest::Approx(4 * 8 + 16 * 28));
  CHECK(s.lhs == doctest::Approx(4 * std::log(480.0) + 4 + 4 * std::log(2 * std::exp(1.0))));
  CHECK(s.rhs == doctest::Approx(10 * std::log(2.0)));
  CHECK_THROWS_AS(ballistic_constraint({0, 1, 1, 2, 1}), BoundsError);
}

TEST_CASE("hamiltonian distance floor") {
  CHECK(hamiltonian_distance_floor(0, 1).floor == 0.0);
  CHECK(hamiltonian_distance_floor(1, 1).floor == doctest::Approx(0.31326).epsilon(1e-4));
  double prev = -1;
  for (double d = 0; d <= 2.0; d += 0.1) {
    const auto f = hamiltonian_distance_floor(d, 0.7);
    CHECK(f.floor > prev);
    CHECK(f.lower <= f.floor + 1e-15);
    prev = f.floor;
  }
  CHECK_THROWS_AS(hamiltonian_distance_floor(2.5, 1), BoundsError);
  CHECK_THROWS_AS(hamiltonian_distance_floor(1, 0), BoundsError);
}

TEST_CASE("hamiltonian lemma holds on random pairs") {
  for (double t : {0.5, 1.0, 2.0}) {
    const auto r = verify_hamiltonian_lemma(4, 500, t, 17);
    CHECK(r.trials == 500);
    CHECK(r.violations == 0);
    CHECK(r.max_ratio <= 1.0);
  }
  CHECK_THROWS_AS(verify_hamiltonian_lemma(3, 1, 1, 1), BoundsError);
}

TEST_CASE("diagonal pair is nearly tight") {
  const double ratio = hamiltonian_diagonal_ratio(0.05, 0.01);
  CHECK(ratio <= 1.0);
  CHECK(ratio >= 0.9);
}

TEST_CASE("distillation cap") {
  const auto c = distillation_fidelity_cap(4, 64, 1);
  CHECK(c.value == 0.8125);
  CHECK(!c.vacuous);
  const auto v = distillation_fidelity_cap(1, 4, 1);
  CHECK(v.raw == 1.25);
  CHECK(v.value == 1.0);
  CHECK(v.vacuous);
  double prev = 2.0;
  for (double n = 8; n <= 4096; n *= 2) {
    const auto x = distillation_fidelity_cap(9, n, 2);
    CHECK(x.value <= prev);
    prev = x.value;
    CHECK((x.value < 1.0) == (n > 8 * 2 * 3));
  }
}

TEST_CASE("indistinguishable tables: unsupported index") {
  // Support only on address 0; the smallest-weight index has no amplitude.
  PureState s(8, 0.0);
  s[0] = 1.0;
  const auto r = verify_indistinguishable_tables({s, s}, 1);
  CHECK(r.indices.front() != 0);
  for (double d : r.deltas) CHECK(d == 0.0);
  CHECK(r.holds);
}

TEST_CASE("indistinguishable tables: exact trace distance") {
  // One state, amplitude 1/2 on |j,0> for four addresses. Flipping one index
  // gives overlap 3/4, so delta = sqrt(1 - 9/16).
  PureState s(8, 0.0);
  for (int j = 0; j < 4; ++j) s[2 * j] = 0.5;
  const auto r = verify_indistinguishable_tables({s}, 1);
  CHECK(r.sum_delta == doctest::Approx(std::sqrt(7.0) / 4));
  CHECK(r.stated_bound == doctest::Approx(0.5));
  CHECK(!r.holds);
  CHECK(r.holds_derived);
  PureState bad(8, 0.0);
  bad[0] = 2.0;
  CHECK_THROWS_AS(verify_indistinguishable_tables({bad}, 1), BoundsError);
}

TEST_CASE("indistinguishable tables: derived bound holds on random states") {
  for (std::uint32_t d : {1u, 4u, 8u}) {
    for (std::uint32_t n : {16u, 64u}) {
      for (std::uint64_t t = 0; t < 50; ++t) {
        const auto r = verify_indistinguishable_tables(random_query_states(d, n, t), 1);
        CHECK(r.holds_derived);
      }
    }
  }
}
