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

#include "qramwb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "qramwb/rng.hpp"

namespace qramwb {

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;

using CMatrix = Eigen::MatrixXcd;

CMatrix random_hermitian(std::uint32_t dim, StreamRng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix a(dim, dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    for (std::uint32_t j = 0; j < dim; ++j) a(i, j) = {gauss(rng), gauss(rng)};
  }
  return (a + a.adjoint()) * 0.5;
}

double spectral_norm_hermitian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

CMatrix exp_i(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& v = es.eigenvectors();
  Eigen::VectorXcd phase(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phase(i) = std::polar(1.0, t * es.eigenvalues()(i));
  }
  return v * phase.asDiagonal() * v.adjoint();
}

double spectral_norm(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

double log2_binomial(double n, double k) {
  if (k < 0 || k > n) throw BoundsError("binomial out of range");
  const long double r = std::lgammal(static_cast<long double>(n) + 1) -
                        std::lgammal(static_cast<long double>(k) + 1) -
                        std::lgammal(static_cast<long double>(n - k) + 1);
  return static_cast<double>(r / static_cast<long double>(kLn2));
}

double log2_circuit_count(const CircuitCountParams& p) {
  if (p.W == 0 || p.D == 0 || p.g == 0 || p.k == 0) {
    throw BoundsError("W, D, g, k must be positive");
  }
  const double dw = static_cast<double>(p.D) * static_cast<double>(p.W);
  if (static_cast<double>(p.G) > dw) throw BoundsError("G must not exceed D*W");
  if (p.k > p.W) throw BoundsError("k must not exceed W");
  if (p.G == 0) return 0.0;
  const double slots = std::min(static_cast<double>(p.k) * static_cast<double>(p.G), dw);
  return log2_binomial(dw, slots) +
         static_cast<double>(p.G) * std::log2(static_cast<double>(p.W) * static_cast<double>(p.g));
}

double gate_capacity(double gates, double w, double d, double g, double k) {
  if (gates <= 0) return 0.0;
  return k * gates * std::log2(d * w * g / (gates * std::sqrt(k)));
}

MinGatesResult min_gates_for_table(double n, std::uint64_t w, std::uint64_t d, std::uint64_t g,
                                   std::uint64_t k) {
  if (n < 1 || w == 0 || d == 0 || g == 0 || k == 0) {
    throw BoundsError("N, W, D, g, k must be positive");
  }
  if (k > w) throw BoundsError("k must not exceed W");
  const double dw = static_cast<double>(d) * static_cast<double>(w);
  const double dk = static_cast<double>(k);
  // capacity(G) increases up to G = DWg / (e sqrt k).
  const double peak = dw * static_cast<double>(g) / (std::exp(1.0) * std::sqrt(dk));
  const auto limit = static_cast<std::uint64_t>(std::max(1.0, std::floor(std::min(peak, dw))));
  auto cap = [&](std::uint64_t gates) {
    return gate_capacity(static_cast<double>(gates), static_cast<double>(w),
                         static_cast<double>(d), static_cast<double>(g), dk);
  };
  MinGatesResult r;
  r.search_limit = limit;
  if (cap(limit) < n) {
    r.capacity = cap(limit);
    return r;
  }
  std::uint64_t lo = 1, hi = limit;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (cap(mid) >= n) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  r.feasible = true;
  r.gates = lo;
  r.capacity = cap(lo);
  r.capacity_prev = cap(lo - 1);
  return r;
}

BallisticResult ballistic_constraint(const BallisticParams& p, BallisticMode mode,
                                     std::uint32_t locality, double num_terms) {
  if (!(p.n > 0 && p.t > 0 && p.E > 0 && p.W > 0 && p.N > 0)) {
    throw BoundsError("ballistic parameters must be positive");
  }
  BallisticResult r;
  r.mode = mode;
  if (mode == BallisticMode::Summary) {
    r.lhs = p.n * p.t * p.E + p.n * std::log2(p.W);
    r.rhs = p.N;
  } else {
    double terms = num_terms;
    if (terms <= 0) {
      for (std::uint32_t j = 1; j <= locality && j <= p.W; ++j) {
        terms += std::exp(j * std::log(4.0) + log2_binomial(p.W, j) * kLn2);
      }
    }
    r.num_terms = terms;
    const double te = p.t * p.E;
    r.lhs = p.n * std::log(terms) + p.n * te + p.n * std::log(2.0 * te * std::exp(1.0));
    r.rhs = p.N * kLn2;
  }
  r.slack = r.lhs - r.rhs;
  r.satisfied = r.lhs >= r.rhs;
  return r;
}

DistanceFloor hamiltonian_distance_floor(double delta, double t) {
  if (!(delta >= 0.0 && delta <= 2.0)) throw BoundsError("delta must be in [0, 2]");
  if (!(t > 0.0)) throw BoundsError("t must be positive");
  const double x = delta * std::exp(-t);
  return {std::log1p(x) / t, (delta / t) * std::exp(-t) * (1.0 - x)};
}

LemmaCheck verify_hamiltonian_lemma(std::uint32_t dim, std::uint64_t trials, double t,
                                    std::uint64_t seed) {
  if (dim < 1 || dim > 16 || (dim & (dim - 1)) != 0) {
    throw BoundsError("dim must be a power of two <= 16");
  }
  LemmaCheck out;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    StreamRng rng(seed, trial);
    CMatrix h1 = random_hermitian(dim, rng);
    h1 *= rng.uniform() / std::max(spectral_norm_hermitian(h1), 1e-300);
    CMatrix pert = random_hermitian(dim, rng);
    pert /= std::max(spectral_norm_hermitian(pert), 1e-300);
    const double scale = std::pow(10.0, -3.0 * rng.uniform());
    CMatrix h2 = h1 + scale * pert;
    const double n2 = spectral_norm_hermitian(h2);
    if (n2 > 1.0) h2 /= n2;
    const double eps = spectral_norm_hermitian(h1 - h2);
    const double delta = std::min(2.0, spectral_norm(exp_i(h1, t) - exp_i(h2, t)));
    const double floor = hamiltonian_distance_floor(delta, t).floor;
    ++out.trials;
    if (eps < floor - 1e-12) ++out.violations;
    if (eps > 0) out.max_ratio = std::max(out.max_ratio, floor / eps);
  }
  return out;
}

double hamiltonian_diagonal_ratio(double t, double eps) {
  if (!(eps > 0.0 && eps <= 2.0)) throw BoundsError("eps must be in (0, 2]");
  const double delta = std::abs(std::polar(1.0, t * eps) - std::complex<double>(1.0, 0.0));
  return hamiltonian_distance_floor(std::min(delta, 2.0), t).floor / eps;
}

DistillationCap distillation_fidelity_cap(double d, double n, double ell) {
  if (!(d >= 1.0)) throw BoundsError("d must be >= 1");
  if (!(ell >= 1.0 && ell <= n)) throw BoundsError("ell must be in [1, N]");
  DistillationCap c;
  c.raw = 0.75 + 2.0 * ell * std::sqrt(d) / n;
  c.vacuous = c.raw >= 1.0;
  c.value = std::min(1.0, c.raw);
  return c;
}

IndistinguishableResult verify_indistinguishable_tables(const std::vector<PureState>& states,
                                                        std::uint32_t ell) {
  if (states.empty()) throw BoundsError("need at least one state");
  const std::size_t dim = states.front().size();
  if (dim < 2 || dim % 2 != 0) throw BoundsError("state dimension must be 2N");
  const auto n = static_cast<std::uint32_t>(dim / 2);
  if (ell < 1 || ell > n) throw BoundsError("ell must be in [1, N]");
  std::vector<double> m(n, 0.0);
  for (const auto& s : states) {
    if (s.size() != dim) throw BoundsError("states differ in dimension");
    double norm = 0.0;
    for (const auto& a : s) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-9) throw BoundsError("state is not normalized");
    for (std::uint32_t j = 0; j < n; ++j) m[j] += std::norm(s[2 * j]) + std::norm(s[2 * j + 1]);
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return m[a] < m[b]; });
  IndistinguishableResult r;
  r.indices.assign(order.begin(), order.begin() + ell);
  std::sort(r.indices.begin(), r.indices.end());
  std::vector<char> flipped(n, 0);
  for (auto j : r.indices) flipped[j] = 1;
  for (const auto& s : states) {
    // <U_T psi | U_T' psi>: unflipped indices contribute their weight,
    // flipped ones the cross term between the two output values.
    std::complex<double> overlap = 0.0;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (flipped[j]) {
        overlap += std::conj(s[2 * j]) * s[2 * j + 1] + std::conj(s[2 * j + 1]) * s[2 * j];
      } else {
        overlap += std::norm(s[2 * j]) + std::norm(s[2 * j + 1]);
      }
    }
    const double delta = std::sqrt(std::max(0.0, 1.0 - std::norm(overlap)));
    r.deltas.push_back(delta);
    r.sum_delta += delta;
  }
  const double d = static_cast<double>(states.size());
  r.stated_bound = 2.0 * ell * std::sqrt(d) / n;
  r.derived_bound = 2.0 * d * std::sqrt(static_cast<double>(ell) / n);
  r.holds = r.sum_delta <= r.stated_bound + 1e-12;
  r.holds_derived = r.sum_delta <= r.derived_bound + 1e-12;
  return r;
}

std::vector<PureState> random_query_states(std::uint32_t d, std::uint32_t n, std::uint64_t seed) {
  std::vector<PureState> out;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::uint32_t i = 0; i < d; ++i) {
    StreamRng rng(seed, i);
    PureState s(2 * std::size_t{n});
    double norm = 0.0;
    for (auto& a : s) {
      a = {gauss(rng), gauss(rng)};
      norm += std::norm(a);
    }
    for (auto& a : s) a /= std::sqrt(norm);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<PureState> uniform_query_states(std::uint32_t d, std::uint32_t n) {
  PureState s(2 * std::size_t{n}, 0.0);
  for (std::uint32_t j = 0; j < n; ++j) s[2 * j] = 1.0 / std::sqrt(static_cast<double>(n));
  return std::vector<PureState>(d, s);
}

}  // namespace qramwb
