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


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qramwb/bounds.hpp"
#include "qramwb/builders.hpp"
#include "qramwb/noise.hpp"
#include "qramwb/qla.hpp"
#include "qramwb/resources.hpp"
#include "qramwb/sparse_sim.hpp"

namespace py = pybind11;
using namespace qramwb;

namespace {

BuilderSpec make_spec(const std::string& kind, std::uint32_t page_log, std::uint32_t query_count,
                      const std::string& uncompute, bool controlled, bool swap_variant) {
  BuilderSpec s;
  s.kind = builder_kind_from_name(kind);
  s.page_log = page_log;
  s.query_count = query_count;
  if (!uncompute.empty()) s.uncompute = uncompute_from_name(uncompute);
  s.controlled = controlled;
  s.swap_variant = swap_variant;
  return s;
}

std::string build_json(const std::string& kind, std::vector<std::uint64_t> words,
                       std::uint32_t word_width, std::uint32_t page_log,
                       std::uint32_t query_count, const std::string& uncompute, bool controlled,
                       bool swap_variant, const std::string& profile, bool strict_toffoli) {
  const auto spec = make_spec(kind, page_log, query_count, uncompute, controlled, swap_variant);
  const auto r = build(spec, BitTable(std::move(words), word_width));
  auto prof = profile == "surface_code" ? ResourceProfile::surface_code()
                                        : ResourceProfile::unit_gate();
  if (profile != "surface_code" && profile != "unit_gate") {
    throw std::invalid_argument("profile must be unit_gate or surface_code");
  }
  prof.strict_toffoli = strict_toffoli;
  nlohmann::ordered_json j;
  j["spec"] = spec_to_json(spec);
  j["N"] = r.table_size;
  j["padded_N"] = r.padded_size;
  j["word_width"] = r.word_width;
  j["profile"] = prof.label();
  j["report"] = report_to_json(count_resources(r.circuit, prof));
  j["params"] = r.params;
  j["circuit"] = circuit_to_json(r.circuit);
  return j.dump();
}

std::string verify_json(const std::string& kind, std::vector<std::uint64_t> words,
                        std::uint32_t word_width, std::uint32_t page_log,
                        std::uint32_t query_count, const std::string& uncompute, bool controlled,
                        bool swap_variant, const std::string& mode, std::uint32_t samples,
                        std::uint64_t seed) {
  const auto spec = make_spec(kind, page_log, query_count, uncompute, controlled, swap_variant);
  VerifyOptions o;
  if (mode == "sampled") {
    o.mode = VerifyMode::Sampled;
  } else if (mode != "exhaustive") {
    throw std::invalid_argument("mode must be exhaustive or sampled");
  }
  o.samples = samples;
  o.seed = seed;
  return verify_to_json(verify_builder(spec, BitTable(std::move(words), word_width), o)).dump();
}

py::dict estimate(const std::string& kind, std::uint32_t n, double p, std::uint64_t trials,
                  std::uint64_t seed, bool phaseflip, std::uint32_t protected_levels) {
  NoiseModel m;
  m.p = p;
  m.seed = seed;
  m.phaseflip = phaseflip;
  m.protected_levels = protected_levels;
  BuilderSpec s;
  s.kind = builder_kind_from_name(kind);
  const auto e = estimate_infidelity(s, n, m, trials);
  py::dict d;
  d["builder"] = e.builder;
  d["N"] = e.n;
  d["p"] = e.p;
  d["trials"] = e.trials;
  d["seed"] = e.seed;
  d["failures"] = e.failures;
  d["phase_flips"] = e.phase_flips;
  d["infidelity"] = e.infidelity;
  d["ci_lo"] = e.ci.lo;
  d["ci_hi"] = e.ci.hi;
  d["csv_row"] = noise_csv_row(e);
  return d;
}

std::string fit_json(const std::vector<double>& ns, const std::vector<double>& ys,
                     const std::string& model) {
  if (ns.size() != ys.size()) throw std::invalid_argument("ns and ys differ in length");
  std::vector<ScalingPoint> pts;
  for (std::size_t i = 0; i < ns.size(); ++i) pts.push_back({ns[i], ys[i], 0.0});
  return fit_to_json(fit_scaling(pts, fit_model_from_name(model))).dump();
}

py::tuple transform(const Eigen::MatrixXcd& h, const CVector& v, const CVector& coeffs,
                    bool rescale) {
  auto m = SparseMatrix::from_dense(h);
  if (rescale) rescale_to_unit_norm(m);
  const auto r = poly_eigen_transform(m, v, Polynomial{coeffs});
  return py::make_tuple(r.v, r.matvecs);
}

}  // namespace

PYBIND11_MODULE(_qramwb, m) {
  m.doc() = "QRAM circuit builders, simulators and bounds";

  py::register_exception<BuilderError>(m, "BuilderError", PyExc_ValueError);
  py::register_exception<SimError>(m, "SimError", PyExc_RuntimeError);
  py::register_exception<NoiseError>(m, "NoiseError", PyExc_ValueError);
  py::register_exception<BoundsError>(m, "BoundsError", PyExc_ValueError);
  py::register_exception<QlaError>(m, "QlaError", PyExc_ValueError);

  m.def("random_table",
        [](std::uint32_t n, std::uint32_t w, std::uint64_t seed) {
          const auto t = random_table(n, w, seed);
          std::vector<std::uint64_t> words;
          for (std::uint32_t i = 0; i < t.size(); ++i) words.push_back(t.word(i));
          return words;
        },
        py::arg("n"), py::arg("word_width") = 1, py::arg("seed") = 0);
  m.def("_build", &build_json, py::arg("kind"), py::arg("words"), py::arg("word_width") = 1,
        py::arg("page_log") = 0, py::arg("query_count") = 1, py::arg("uncompute") = "",
        py::arg("controlled") = false, py::arg("swap_variant") = false,
        py::arg("profile") = "unit_gate", py::arg("strict_toffoli") = false);
  m.def("_verify", &verify_json, py::arg("kind"), py::arg("words"), py::arg("word_width") = 1,
        py::arg("page_log") = 0, py::arg("query_count") = 1, py::arg("uncompute") = "",
        py::arg("controlled") = false, py::arg("swap_variant") = false,
        py::arg("mode") = "exhaustive", py::arg("samples") = 64, py::arg("seed") = 0);
  m.def("estimate_infidelity", &estimate, py::arg("kind"), py::arg("n"), py::arg("p"),
        py::arg("trials"), py::arg("seed") = 0, py::arg("phaseflip") = false,
        py::arg("protected_levels") = 0);
  m.def("_fit_scaling", &fit_json, py::arg("ns"), py::arg("ys"), py::arg("model") = "power_in_N");
  m.attr("NOISE_CSV_HEADER") = kNoiseCsvHeader;

  m.def("log2_circuit_count",
        [](std::uint64_t W, std::uint64_t D, std::uint64_t G, std::uint64_t g, std::uint64_t k) {
          return log2_circuit_count({W, D, G, g, k});
        },
        py::arg("W"), py::arg("D"), py::arg("G"), py::arg("g"), py::arg("k"));
  m.def("min_gates_for_table",
        [](double n, std::uint64_t w, std::uint64_t d, std::uint64_t g, std::uint64_t k) {
          const auto r = min_gates_for_table(n, w, d, g, k);
          py::dict out;
          out["feasible"] = r.feasible;
          out["gates"] = r.gates;
          out["capacity"] = r.capacity;
          return out;
        },
        py::arg("n"), py::arg("w"), py::arg("d"), py::arg("g"), py::arg("k"));
  m.def("hamiltonian_distance_floor",
        [](double delta, double t) { return hamiltonian_distance_floor(delta, t).floor; },
        py::arg("delta"), py::arg("t"));
  m.def("distillation_fidelity_cap",
        [](double d, double n, double ell) { return distillation_fidelity_cap(d, n, ell).value; },
        py::arg("d"), py::arg("n"), py::arg("ell") = 1.0);

  m.def("_regime_table",
        [](double n, double d, double k) {
          return regime_table_to_json(regime_table(n, d, k), n, d, k).dump();
        },
        py::arg("n"), py::arg("d"), py::arg("k"));
  m.def("regime_table_markdown",
        [](double n, double d, double k) { return regime_table_markdown(regime_table(n, d, k)); },
        py::arg("n"), py::arg("d"), py::arg("k"));
  m.def("poly_eigen_transform", &transform, py::arg("h"), py::arg("v"), py::arg("coeffs"),
        py::arg("rescale") = true);
  m.def("eigen_oracle",
        [](const Eigen::MatrixXcd& h, const CVector& v, const CVector& coeffs) {
          return eigen_oracle(h, v, Polynomial{coeffs});
        },
        py::arg("h"), py::arg("v"), py::arg("coeffs"));
}
