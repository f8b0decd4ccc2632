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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace qramwb {

class QlaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Row-list sparse matrix. Rows are kept sorted by column so every matvec
/// sums in the same order.
class SparseMatrix {
 public:
  using Entry = std::pair<std::uint32_t, Complex>;

  explicit SparseMatrix(std::uint32_t n = 0) : rows_(n) {}

  std::uint32_t size() const { return static_cast<std::uint32_t>(rows_.size()); }
  /// Adds v to entry (i, j).
  void add(std::uint32_t i, std::uint32_t j, Complex v);
  const std::vector<Entry>& row(std::uint32_t i) const { return rows_.at(i); }
  std::uint32_t sparsity() const;
  std::uint64_t nonzeros() const;
  bool is_hermitian(double tol = 1e-12) const;

  void matvec(const CVector& in, CVector& out) const;
  void scale(double s);
  Eigen::MatrixXcd dense() const;
  static SparseMatrix from_dense(const Eigen::MatrixXcd& m, double drop = 0.0);

 private:
  std::vector<std::vector<Entry>> rows_;
};

/// Random Hermitian matrix with at most d nonzeros per row.
SparseMatrix random_sparse_hermitian(std::uint32_t n, std::uint32_t d, std::uint64_t seed);

/// Power-iteration estimate of the spectral norm.
double estimate_norm(const SparseMatrix& h, std::uint32_t iterations = 50, double tol = 1e-8);

/// Divides by max(1, estimate_norm(h)); returns the factor used.
double rescale_to_unit_norm(SparseMatrix& h);

struct Polynomial {
  std::vector<Complex> coeffs;  // a_0 .. a_k

  std::uint32_t degree() const;
  Complex operator()(Complex x) const;
  /// |f(x)| <= 1 at `samples` evenly spaced points of [-1, 1].
  bool bounded_on_unit_interval(std::uint32_t samples = 1001) const;
};

struct TransformResult {
  CVector v;
  std::uint32_t matvecs = 0;
};

/// sum_j a_j H^j v accumulated in a running total, then normalized.
TransformResult poly_eigen_transform(const SparseMatrix& h, const CVector& v,
                                     const Polynomial& f);

/// Dense eigendecomposition reference: V f(Lambda) V^dagger v, normalized.
CVector eigen_oracle(const Eigen::MatrixXcd& h, const CVector& v, const Polynomial& f);

double relative_error(const CVector& a, const CVector& b);

/// [[0, A], [A^dagger, 0]].
Eigen::MatrixXcd hermitian_embedding(const Eigen::MatrixXcd& a);
/// Largest gap between the embedding's sorted spectrum and the sorted
/// multiset {+-s_i} of singular values of A (square A).
double embedding_spectrum_gap(const Eigen::MatrixXcd& a);

SparseMatrix read_matrix_market(std::istream& in);
void write_matrix_market(std::ostream& out, const SparseMatrix& m);
CVector read_vector(std::istream& in);
void write_vector(std::ostream& out, const CVector& v);

enum class StepModel { SharedMemory, HypercubeSort, Mesh2dSort, DenseGrid };

std::string_view step_model_name(StepModel m);
StepModel step_model_from_name(std::string_view name);

struct StepTerm {
  std::string name;
  double value = 0.0;
};

struct StepCount {
  StepModel model = StepModel::SharedMemory;
  double n = 0, d = 0, p = 0;
  std::vector<StepTerm> terms;
  double total = 0.0;
};

/// Time steps for one parallel matvec with unit constants.
StepCount stepcount_models(double n, double d, double p, StepModel model);

nlohmann::ordered_json stepcount_to_json(const StepCount& s);

enum class Regime { Small, Medium, Large };

std::string_view regime_name(Regime r);

struct Advantage {
  std::string verdict;     // "None" or "Õ((Nd)^{e})"
  double exponent = 0.0;   // power of Nd in classical over quantum time
  double value = 1.0;      // (Nd)^exponent, 1 when none
  double classical = 0.0;  // k * per-step classical time
  double quantum = 0.0;    // k * per-step QRAM access time
};

struct RegimeReport {
  Regime regime = Regime::Small;
  bool free_wires = false;
  bool instant_communication = false;
  Advantage sparse;
  Advantage dense;
  std::vector<std::string> assumptions;
};

/// One report per regime, in table order. Requires 1 <= d <= N.
std::vector<RegimeReport> regime_table(double n, double d, double k);

std::string regime_table_markdown(const std::vector<RegimeReport>& rows);
nlohmann::ordered_json regime_table_to_json(const std::vector<RegimeReport>& rows, double n,
                                            double d, double k);

}  // namespace qramwb
