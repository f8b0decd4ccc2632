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

#include "qramwb/qla.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "qramwb/rng.hpp"

namespace qramwb {

void SparseMatrix::add(std::uint32_t i, std::uint32_t j, Complex v) {
  if (i >= size() || j >= size()) throw QlaError("matrix index out of range");
  auto& r = rows_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, std::uint32_t c) { return e.first < c; });
  if (it != r.end() && it->first == j) {
    it->second += v;
  } else {
    r.insert(it, {j, v});
  }
}

std::uint32_t SparseMatrix::sparsity() const {
  std::size_t d = 0;
  for (const auto& r : rows_) d = std::max(d, r.size());
  return static_cast<std::uint32_t>(d);
}

std::uint64_t SparseMatrix::nonzeros() const {
  std::uint64_t c = 0;
  for (const auto& r : rows_) c += r.size();
  return c;
}

bool SparseMatrix::is_hermitian(double tol) const {
  for (std::uint32_t i = 0; i < size(); ++i) {
    for (const auto& [j, v] : rows_[i]) {
      const auto& r = rows_[j];
      auto it = std::lower_bound(r.begin(), r.end(), i,
                                 [](const Entry& e, std::uint32_t c) { return e.first < c; });
      const Complex mirror = (it != r.end() && it->first == i) ? it->second : Complex{};
      if (std::abs(v - std::conj(mirror)) > tol) return false;
    }
  }
  return true;
}

void SparseMatrix::matvec(const CVector& in, CVector& out) const {
  if (in.size() != size()) throw QlaError("vector dimension does not match matrix");
  out.assign(size(), Complex{});
  for (std::uint32_t i = 0; i < size(); ++i) {
    Complex acc{};
    for (const auto& [j, v] : rows_[i]) acc += v * in[j];
    out[i] = acc;
  }
}

void SparseMatrix::scale(double s) {
  for (auto& r : rows_) {
    for (auto& e : r) e.second *= s;
  }
}

Eigen::MatrixXcd SparseMatrix::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size(), size());
  for (std::uint32_t i = 0; i < size(); ++i) {
    for (const auto& [j, v] : rows_[i]) m(i, j) = v;
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Eigen::MatrixXcd& m, double drop) {
  if (m.rows() != m.cols()) throw QlaError("matrix must be square");
  SparseMatrix s(static_cast<std::uint32_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) > drop) {
        s.add(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), m(i, j));
      }
    }
  }
  return s;
}

SparseMatrix random_sparse_hermitian(std::uint32_t n, std::uint32_t d, std::uint64_t seed) {
  if (n == 0 || d == 0) throw QlaError("need n >= 1 and d >= 1");
  StreamRng rng(seed, 0x716c61ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SparseMatrix h(n);
  std::vector<std::uint32_t> fill(n, 1);
  for (std::uint32_t i = 0; i < n; ++i) h.add(i, i, gauss(rng));
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  const std::uint64_t attempts = std::uint64_t{n} * (d - 1);
  for (std::uint64_t a = 0; a < attempts; ++a) {
    const auto i = pick(rng);
    const auto j = pick(rng);
    if (i == j || fill[i] >= d || fill[j] >= d) continue;
    const auto& r = h.row(i);
    if (std::any_of(r.begin(), r.end(), [&](const auto& e) { return e.first == j; })) continue;
    const Complex v{gauss(rng), gauss(rng)};
    h.add(i, j, v);
    h.add(j, i, std::conj(v));
    ++fill[i];
    ++fill[j];
  }
  return h;
}

double estimate_norm(const SparseMatrix& h, std::uint32_t iterations, double tol) {
  const std::uint32_t n = h.size();
  if (n == 0) return 0.0;
  CVector x(n), y;
  for (std::uint32_t i = 0; i < n; ++i) x[i] = 1.0 + 0.01 * static_cast<double>(i % 7);
  double est = 0.0;
  for (std::uint32_t it = 0; it < iterations; ++it) {
    double nx = 0.0;
    for (const auto& a : x) nx += std::norm(a);
    nx = std::sqrt(nx);
    if (nx == 0.0) return 0.0;
    for (auto& a : x) a /= nx;
    h.matvec(x, y);
    double ny = 0.0;
    for (const auto& a : y) ny += std::norm(a);
    ny = std::sqrt(ny);
    const bool done = std::abs(ny - est) <= tol * std::max(1.0, ny);
    est = ny;
    if (done) break;
    x.swap(y);
  }
  return est;
}

double rescale_to_unit_norm(SparseMatrix& h) {
  const double f = std::max(1.0, estimate_norm(h));
  h.scale(1.0 / f);
  return f;
}

std::uint32_t Polynomial::degree() const {
  if (coeffs.empty()) throw QlaError("polynomial has no coefficients");
  return static_cast<std::uint32_t>(coeffs.size() - 1);
}

Complex Polynomial::operator()(Complex x) const {
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool Polynomial::bounded_on_unit_interval(std::uint32_t samples) const {
  for (std::uint32_t s = 0; s < samples; ++s) {
    const double x = samples == 1 ? 0.0 : -1.0 + 2.0 * s / (samples - 1);
    if (std::abs((*this)(x)) > 1.0 + 1e-12) return false;
  }
  return true;
}

namespace {

double norm2(const CVector& v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return std::sqrt(s);
}

}  // namespace

TransformResult poly_eigen_transform(const SparseMatrix& h, const CVector& v,
                                     const Polynomial& f) {
  const auto k = f.degree();
  if (v.size() != h.size()) throw QlaError("vector dimension does not match matrix");
  TransformResult r;
  CVector power = v, next;
  r.v.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r.v[i] = f.coeffs[0] * v[i];
  for (std::uint32_t j = 1; j <= k; ++j) {
    h.matvec(power, next);
    ++r.matvecs;
    power.swap(next);
    for (std::size_t i = 0; i < v.size(); ++i) r.v[i] += f.coeffs[j] * power[i];
  }
  const double nr = norm2(r.v);
  if (nr <= 1e-14) throw QlaError("f(H)v vanishes; normalization undefined");
  for (auto& a : r.v) a /= nr;
  return r;
}

CVector eigen_oracle(const Eigen::MatrixXcd& h, const CVector& v, const Polynomial& f) {
  if (h.rows() != h.cols()) throw QlaError("matrix must be square");
  if (h.rows() > 256) throw QlaError("oracle limited to 256 x 256");
  if (static_cast<std::size_t>(h.rows()) != v.size()) {
    throw QlaError("vector dimension does not match matrix");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw QlaError("matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const auto& q = es.eigenvectors();
  Eigen::VectorXcd x(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) x(i) = v[static_cast<std::size_t>(i)];
  Eigen::VectorXcd c = q.adjoint() * x;
  for (Eigen::Index i = 0; i < h.rows(); ++i) c(i) *= f(es.eigenvalues()(i));
  Eigen::VectorXcd y = q * c;
  const double ny = y.norm();
  if (ny <= 1e-14) throw QlaError("f(H)v vanishes; normalization undefined");
  y /= ny;
  return CVector(y.data(), y.data() + y.size());
}

double relative_error(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw QlaError("vector sizes differ");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

Eigen::MatrixXcd hermitian_embedding(const Eigen::MatrixXcd& a) {
  const auto r = a.rows(), c = a.cols();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(r + c, r + c);
  h.topRightCorner(r, c) = a;
  h.bottomLeftCorner(c, r) = a.adjoint();
  return h;
}

double embedding_spectrum_gap(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw QlaError("embedding check needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_embedding(a),
                                                     Eigen::EigenvaluesOnly);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  std::vector<double> expect;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    expect.push_back(svd.singularValues()(i));
    expect.push_back(-svd.singularValues()(i));
  }
  std::sort(expect.begin(), expect.end());
  double gap = 0.0;
  for (std::size_t i = 0; i < expect.size(); ++i) {
    gap = std::max(gap, std::abs(es.eigenvalues()(static_cast<Eigen::Index>(i)) - expect[i]));
  }
  return gap;
}

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw QlaError("empty Matrix Market input");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  auto lower = [](std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate") {
    throw QlaError("expected a Matrix Market coordinate header");
  }
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "complex" && field != "integer") {
    throw QlaError("unsupported Matrix Market field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian") {
    throw QlaError("unsupported Matrix Market symmetry '" + symmetry + "'");
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream size_line(line);
  std::uint64_t rows = 0, cols = 0, nnz = 0;
  if (!(size_line >> rows >> cols >> nnz) || rows != cols || rows == 0) {
    throw QlaError("Matrix Market size line must describe a nonempty square matrix");
  }
  SparseMatrix m(static_cast<std::uint32_t>(rows));
  for (std::uint64_t e = 0; e < nnz; ++e) {
    std::uint64_t i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(in >> i >> j >> re)) throw QlaError("truncated Matrix Market entries");
    if (field == "complex" && !(in >> im)) throw QlaError("truncated Matrix Market entries");
    if (i < 1 || j < 1 || i > rows || j > cols) throw QlaError("Matrix Market index out of range");
    const auto r = static_cast<std::uint32_t>(i - 1), c = static_cast<std::uint32_t>(j - 1);
    const Complex v{re, im};
    m.add(r, c, v);
    if (r != c && symmetry != "general") m.add(c, r, symmetry == "hermitian" ? std::conj(v) : v);
  }
  return m;
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << m.size() << ' ' << m.size() << ' ' << m.nonzeros() << '\n';
  char buf[96];
  for (std::uint32_t i = 0; i < m.size(); ++i) {
    for (const auto& [j, v] : m.row(i)) {
      std::snprintf(buf, sizeof buf, "%u %u %.17g %.17g\n", i + 1, j + 1, v.real(), v.imag());
      out << buf;
    }
  }
}

CVector read_vector(std::istream& in) {
  CVector v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%' || line[0] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) throw QlaError("bad vector line '" + line + "'");
    ls >> im;
    v.emplace_back(re, im);
  }
  return v;
}

void write_vector(std::ostream& out, const CVector& v) {
  char buf[64];
  for (const auto& a : v) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", a.real(), a.imag());
    out << buf;
  }
}

std::string_view step_model_name(StepModel m) {
  switch (m) {
    case StepModel::SharedMemory: return "shared_memory";
    case StepModel::HypercubeSort: return "hypercube_sort";
    case StepModel::Mesh2dSort: return "mesh2d_sort";
    case StepModel::DenseGrid: return "dense_grid";
  }
  return "?";
}

StepModel step_model_from_name(std::string_view name) {
  for (auto m : {StepModel::SharedMemory, StepModel::HypercubeSort, StepModel::Mesh2dSort,
                 StepModel::DenseGrid}) {
    if (step_model_name(m) == name) return m;
  }
  throw QlaError("unknown step model '" + std::string(name) + "'");
}

StepCount stepcount_models(double n, double d, double p, StepModel model) {
  if (!(n >= 1 && d >= 1 && p >= 1)) throw QlaError("need N, d, P >= 1");
  StepCount s{model, n, d, p, {}, 0.0};
  const double nd = n * d;
  switch (model) {
    case StepModel::SharedMemory:
      s.terms = {{"Nd/P", nd / p}, {"lg(P/N)", std::max(0.0, std::log2(p / n))}};
      break;
    case StepModel::HypercubeSort:
      s.terms = {{"S=lg^2(Nd)", std::log2(nd) * std::log2(nd)}, {"Nd/P", nd / p},
                 {"lg(d)", std::log2(d)}};
      break;
    case StepModel::Mesh2dSort:
      s.terms = {{"S=(Nd)^(1/2)", std::sqrt(nd)}, {"Nd/P", nd / p}, {"lg(d)", std::log2(d)}};
      break;
    case StepModel::DenseGrid:
      s.terms = {{"lg(N)", std::log2(n)}};
      break;
  }
  for (const auto& t : s.terms) s.total += t.value;
  return s;
}

nlohmann::ordered_json stepcount_to_json(const StepCount& s) {
  nlohmann::ordered_json j;
  j["model"] = step_model_name(s.model);
  j["N"] = s.n;
  j["d"] = s.d;
  j["P"] = s.p;
  auto terms = nlohmann::ordered_json::array();
  for (const auto& t : s.terms) terms.push_back({{"term", t.name}, {"value", t.value}});
  j["terms"] = terms;
  j["total"] = s.total;
  return j;
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::Small: return "Small";
    case Regime::Medium: return "Medium";
    case Regime::Large: return "Large";
  }
  return "?";
}

namespace {

// Power of the memory size in a model's leading term; polylog terms are 0.
double leading_exponent(StepModel m) {
  return m == StepModel::Mesh2dSort ? 0.5 : 0.0;
}

struct Cost {
  double time = 0.0;
  double exponent = 0.0;
};

Cost classical_cost(double n, double d, StepModel m) {
  return {stepcount_models(n, d, n * d, m).total, leading_exponent(m)};
}

// QRAM access: polylog with instant communication, else signal travel
// across a memory of size Nd laid out in two dimensions.
Cost quantum_cost(double n, double d, bool instant) {
  if (instant) return {std::log2(n * d), 0.0};
  return {std::sqrt(n * d), 0.5};
}

std::string exponent_text(double e) {
  if (e == 0.5) return "1/2";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", e);
  return buf;
}

Advantage compare(const Cost& c, const Cost& q, double size, double k) {
  Advantage a;
  a.classical = k * c.time;
  a.quantum = k * q.time;
  a.exponent = c.exponent - q.exponent;
  if (a.exponent > 0) {
    a.verdict = "Õ((Nd)^{" + exponent_text(a.exponent) + "})";
    a.value = std::pow(size, a.exponent);
  } else {
    a.verdict = "None";
    a.value = 1.0;
  }
  return a;
}

}  // namespace

std::vector<RegimeReport> regime_table(double n, double d, double k) {
  if (!(n >= 1 && d >= 1 && d <= n)) throw QlaError("need 1 <= d <= N");
  if (!(k >= 1)) throw QlaError("need k >= 1");
  std::vector<RegimeReport> rows;
  for (auto regime : {Regime::Small, Regime::Medium, Regime::Large}) {
    RegimeReport r;
    r.regime = regime;
    r.free_wires = regime == Regime::Small;
    r.instant_communication = regime != Regime::Large;
    // Free wires admit a hypercube-style interconnect (shared-memory model);
    // without them processors sit on a 2D mesh.
    const StepModel sparse_model = r.free_wires ? StepModel::SharedMemory : StepModel::Mesh2dSort;
    StepModel dense_model = r.free_wires ? StepModel::SharedMemory : StepModel::DenseGrid;
    if (!r.instant_communication) dense_model = StepModel::Mesh2dSort;
    r.sparse = compare(classical_cost(n, d, sparse_model),
                       quantum_cost(n, d, r.instant_communication), n * d, k);
    r.dense = compare(classical_cost(n, n, dense_model),
                      quantum_cost(n, n, r.instant_communication), n * n, k);
    r.assumptions = {
        std::string("free wires: ") + (r.free_wires ? "yes" : "no"),
        std::string("instant communication: ") + (r.instant_communication ? "yes" : "no"),
        "sparse classical model: " + std::string(step_model_name(sparse_model)) + " with P = Nd",
        "dense classical model: " + std::string(step_model_name(dense_model)) + " with P = N^2",
    };
    if (r.free_wires) r.assumptions.push_back("hypercube wiring needs Omega((Nd)^(3/2)) wire length");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string regime_table_markdown(const std::vector<RegimeReport>& rows) {
  std::string s =
      "| Scale | Free wires | Instant communication | Sparse Matrices | Dense Matrices |\n"
      "|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    s += "| " + std::string(regime_name(r.regime)) + " | " + (r.free_wires ? "Yes" : "No") +
         " | " + (r.instant_communication ? "Yes" : "No") + " | " + r.sparse.verdict + " | " +
         r.dense.verdict + " |\n";
  }
  return s;
}

nlohmann::ordered_json regime_table_to_json(const std::vector<RegimeReport>& rows, double n,
                                            double d, double k) {
  auto adv = [](const Advantage& a) {
    nlohmann::ordered_json j;
    j["verdict"] = a.verdict;
    j["exponent"] = a.exponent;
    j["value"] = a.value;
    j["classical_steps"] = a.classical;
    j["quantum_steps"] = a.quantum;
    return j;
  };
  nlohmann::ordered_json j;
  j["N"] = n;
  j["d"] = d;
  j["k"] = k;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json e;
    e["regime"] = regime_name(r.regime);
    e["free_wires"] = r.free_wires;
    e["instant_communication"] = r.instant_communication;
    e["sparse"] = adv(r.sparse);
    e["dense"] = adv(r.dense);
    e["assumptions"] = r.assumptions;
    arr.push_back(e);
  }
  j["regimes"] = arr;
  return j;
}

}  // namespace qramwb
