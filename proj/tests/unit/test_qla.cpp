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

#include <cmath>
#include <sstream>

#include "qramwb/qla.hpp"
#include "qramwb/rng.hpp"

using namespace qramwb;

namespace {

CVector random_vector(std::uint32_t n, std::uint64_t seed) {
  StreamRng rng(seed, 1);
  CVector v(n);
  for (auto& x : v) x = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return v;
}

}  // namespace

TEST_CASE("random sparse hermitian respects sparsity") {
  const auto h = random_sparse_hermitian(64, 4, 3);
  CHECK(h.size() == 64);
  CHECK(h.sparsity() <= 4);
  CHECK(h.is_hermitian());
  const auto m = h.dense();
  CHECK((m - m.adjoint()).norm() < 1e-12);
}

TEST_CASE("power iteration norm agrees with dense spectrum") {
  auto h = random_sparse_hermitian(48, 5, 9);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
  const double exact = es.eigenvalues().cwiseAbs().maxCoeff();
  // Power iteration approaches the norm from below.
  const double est = estimate_norm(h);
  CHECK(est <= exact * (1 + 1e-12));
  CHECK(est >= 0.95 * exact);
  rescale_to_unit_norm(h);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(h.dense());
  CHECK(es2.eigenvalues().cwiseAbs().maxCoeff() == doctest::Approx(exact / est));
  SparseMatrix small(2);
  small.add(0, 0, 0.5);
  CHECK(rescale_to_unit_norm(small) == 1.0);
}

TEST_CASE("polynomial transform matches the eigendecomposition oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto h = random_sparse_hermitian(32 + seed * 8, 1 + seed % 6, seed);
    rescale_to_unit_norm(h);
    const auto v = random_vector(h.size(), seed);
    Polynomial f;
    for (std::uint32_t j = 0; j <= seed % 7 + 1; ++j) {
      f.coeffs.push_back(Complex(1.0 / (j + 1), j % 2 ? 0.3 : -0.2));
    }
    const auto r = poly_eigen_transform(h, v, f);
    CHECK(r.matvecs == f.degree());
    CHECK(relative_error(r.v, eigen_oracle(h.dense(), v, f)) < 1e-9);
  }
}

TEST_CASE("constant and identity polynomials") {
  auto h = random_sparse_hermitian(16, 3, 4);
  rescale_to_unit_norm(h);
  const auto v = random_vector(16, 4);
  double nv = 0;
  for (const auto& x : v) nv += std::norm(x);
  nv = std::sqrt(nv);
  const auto c = poly_eigen_transform(h, v, Polynomial{{Complex(2.0)}});
  CHECK(c.matvecs == 0);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(c.v[i] - v[i] / nv) < 1e-12);
  const auto x = poly_eigen_transform(h, v, Polynomial{{0.0, 1.0}});
  CHECK(x.matvecs == 1);
  CVector hv(16);
  h.matvec(v, hv);
  CHECK(relative_error(x.v, eigen_oracle(h.dense(), v, Polynomial{{0.0, 1.0}})) < 1e-12);
  CHECK_THROWS_AS(Polynomial{}.degree(), QlaError);
}

TEST_CASE("diagonal matrices apply f entrywise") {
  SparseMatrix h(4);
  const double lam[] = {-0.9, -0.1, 0.4, 0.8};
  for (std::uint32_t i = 0; i < 4; ++i) h.add(i, i, lam[i]);
  const CVector v{1.0, 1.0, 1.0, 1.0};
  const Polynomial f{{0.5, 0.0, 1.0}};
  const auto r = poly_eigen_transform(h, v, f);
  CVector want(4);
  double norm = 0;
  for (int i = 0; i < 4; ++i) {
    want[i] = 0.5 + lam[i] * lam[i];
    norm += std::norm(want[i]);
  }
  for (int i = 0; i < 4; ++i) CHECK(std::abs(r.v[i] - want[i] / std::sqrt(norm)) < 1e-12);
}

TEST_CASE("annihilating polynomial throws on the zero vector") {
  SparseMatrix h(2);
  h.add(0, 0, 0.5);
  h.add(1, 1, 0.5);
  CHECK_THROWS_AS(poly_eigen_transform(h, {1.0, 0.0}, Polynomial{{-0.5, 1.0}}), QlaError);
}

TEST_CASE("non hermitian input is rejected by the oracle") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(eigen_oracle(m, {1.0, 0.0}, Polynomial{{0.0, 1.0}}), QlaError);
  SparseMatrix s = SparseMatrix::from_dense(m);
  CHECK(!s.is_hermitian());
}

TEST_CASE("polynomial boundedness") {
  CHECK(Polynomial{{0.0, 1.0}}.bounded_on_unit_interval());
  CHECK(!Polynomial{{0.0, 2.0}}.bounded_on_unit_interval());
  // Chebyshev T3 stays in [-1, 1].
  CHECK(Polynomial{{0.0, -3.0, 0.0, 4.0}}.bounded_on_unit_interval());
}

TEST_CASE("hermitian embedding spectrum is plus and minus singular values") {
  StreamRng rng(5, 0);
  for (int n : {2, 5, 9}) {
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    const auto e = hermitian_embedding(a);
    CHECK(e.rows() == 2 * n);
    CHECK((e - e.adjoint()).norm() < 1e-14);
    CHECK(embedding_spectrum_gap(a) < 1e-10);
  }
}

TEST_CASE("matrix market round trip") {
  auto h = random_sparse_hermitian(12, 3, 8);
  std::stringstream ss;
  write_matrix_market(ss, h);
  const auto back = read_matrix_market(ss);
  CHECK((back.dense() - h.dense()).norm() < 1e-14);

  std::stringstream sym(
      "%%MatrixMarket matrix coordinate real symmetric\n% comment\n3 3 2\n1 1 2.0\n3 1 -1.5\n");
  const auto s = read_matrix_market(sym);
  CHECK(s.is_hermitian());
  CHECK(s.dense()(0, 2) == Complex(-1.5));
  CHECK(s.dense()(2, 0) == Complex(-1.5));
  std::stringstream herm(
      "%%MatrixMarket matrix coordinate complex hermitian\n2 2 1\n2 1 0.0 1.0\n");
  const auto hm = read_matrix_market(herm);
  CHECK(hm.dense()(1, 0) == Complex(0, 1));
  CHECK(hm.dense()(0, 1) == Complex(0, -1));
  std::stringstream bad("%%MatrixMarket matrix array real general\n2 2\n");
  CHECK_THROWS_AS(read_matrix_market(bad), QlaError);

  const auto v = random_vector(7, 2);
  std::stringstream vs;
  write_vector(vs, v);
  const auto vb = read_vector(vs);
  REQUIRE(vb.size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(std::abs(vb[i] - v[i]) < 1e-15);
}

TEST_CASE("step models") {
  const auto sm = stepcount_models(1024, 8, 1024 * 8, StepModel::SharedMemory);
  CHECK(sm.total == doctest::Approx(1.0 + 3.0));
  const auto small_p = stepcount_models(1024, 8, 512, StepModel::SharedMemory);
  CHECK(small_p.total == doctest::Approx(16.0));
  double prev = 1e300;
  for (double p = 1; p <= 1 << 13; p *= 2) {
    const auto m = stepcount_models(1024, 8, p, StepModel::Mesh2dSort);
    CHECK(m.total < prev);
    prev = m.total;
  }
  const auto hc = stepcount_models(16, 16, 256, StepModel::HypercubeSort);
  CHECK(hc.total == doctest::Approx(64 + 1 + 4));
  CHECK(stepcount_models(1024, 4, 1, StepModel::DenseGrid).total == doctest::Approx(10));
  CHECK(step_model_from_name(step_model_name(StepModel::Mesh2dSort)) == StepModel::Mesh2dSort);
  CHECK_THROWS_AS(stepcount_models(0, 1, 1, StepModel::DenseGrid), QlaError);
  CHECK(stepcount_to_json(hc)["terms"].size() == 3);
}

TEST_CASE("regime table verdicts across a parameter grid") {
  int checked = 0;
  for (int a = 4; a <= 40; a += 4) {
    for (int b = 0; b < 10; ++b) {
      const double n = std::pow(2.0, a);
      const double d = std::pow(2.0, std::min(a, b * 3));
      const auto rows = regime_table(n, d, 1 + b);
      REQUIRE(rows.size() == 3);
      CHECK(rows[0].sparse.verdict == "None");
      CHECK(rows[0].dense.verdict == "None");
      CHECK(rows[1].sparse.verdict == "Õ((Nd)^{1/2})");
      CHECK(rows[1].sparse.exponent == 0.5);
      CHECK(rows[1].dense.verdict == "None");
      CHECK(rows[2].sparse.verdict == "None");
      CHECK(rows[2].dense.verdict == "None");
      ++checked;
    }
  }
  CHECK(checked == 100);
  const auto md = regime_table_markdown(regime_table(1 << 20, 8, 32));
  CHECK(md.rfind("| Scale | Free wires | Instant communication | Sparse Matrices | Dense Matrices |", 0) == 0);
  CHECK(md.find("| Medium | No | Yes | Õ((Nd)^{1/2}) | None |") != std::string::npos);
  CHECK_THROWS_AS(regime_table(8, 16, 1), QlaError);
}
