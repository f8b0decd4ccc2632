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

// qramwb: build, verify, noise, bounds and cost subcommands.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qramwb/bounds.hpp"
#include "qramwb/builders.hpp"
#include "qramwb/circuit.hpp"
#include "qramwb/noise.hpp"
#include "qramwb/qla.hpp"
#include "qramwb/resources.hpp"
#include "qramwb/rng.hpp"
#include "qramwb/sparse_sim.hpp"
#include "qramwb/table.hpp"

namespace {

using qramwb::BitTable;
using Json = nlohmann::ordered_json;

constexpr int kSchema = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerifyFailed {};

void emit(const Json& j) { std::cout << j.dump() << '\n'; }

void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

struct TableArgs {
  std::string source;
  std::optional<std::uint32_t> n;
  std::optional<std::uint64_t> seed;
  std::uint32_t word_width = 1;

  void add(CLI::App* app, bool table_required) {
    auto* t = app->add_option("--table", source, "random | hex:<digits> | <file>");
    if (table_required) t->required();
    app->add_option("--n", n, "table size N");
    app->add_option("--seed", seed, "seed (required for random tables)");
    app->add_option("--word-width", word_width, "bits per word")->check(CLI::Range(1, 64));
  }

  BitTable load() const {
    if (source == "random") {
      if (!n) throw UsageError("--table random needs --n");
      if (!seed) throw UsageError("--table random needs --seed");
      return qramwb::random_table(*n, word_width, *seed);
    }
    if (source.rfind("hex:", 0) == 0) {
      if (!n) throw UsageError("--table hex: needs --n");
      return qramwb::table_from_hex(source.substr(4), *n, word_width);
    }
    auto t = qramwb::read_table_file(source);
    if (n && *n != t.size()) throw UsageError("--n does not match the table file");
    return t;
  }
};

struct SpecArgs {
  std::string kind;
  std::uint32_t page_log = 0;
  std::uint32_t k = 1;
  std::string uncompute;
  bool controlled = false;
  bool swap_variant = false;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "builder kind")->required();
    app->add_option("--page-log", page_log, "select_swap page size exponent");
    app->add_option("--k", k, "parallel_sorted query count");
    app->add_option("--uncompute", uncompute, "coherent | measurement_based");
    app->add_flag("--controlled", controlled, "controlled recursive variant");
    app->add_flag("--swap-variant", swap_variant, "fanout_swap_qraqm swap readout");
  }

  qramwb::BuilderSpec spec() const {
    qramwb::BuilderSpec s;
    s.kind = qramwb::builder_kind_from_name(kind);
    s.page_log = page_log;
    s.query_count = k;
    if (!uncompute.empty()) s.uncompute = qramwb::uncompute_from_name(uncompute);
    s.controlled = controlled;
    s.swap_variant = swap_variant;
    return s;
  }
};

std::vector<std::uint32_t> parse_sweep(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {static_cast<std::uint32_t>(std::stoul(text))};
  const auto lo = std::stoul(text.substr(0, colon));
  const auto hi = std::stoul(text.substr(colon + 1));
  if (lo < 2 || hi < lo) throw UsageError("sweep must be lo:hi with 2 <= lo <= hi");
  std::vector<std::uint32_t> out;
  for (unsigned long v = lo; v <= hi; v *= 2) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

qramwb::Polynomial parse_coeffs(const std::string& text) {
  qramwb::Polynomial f;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto at = item.find('j');
    if (at == std::string::npos) {
      f.coeffs.emplace_back(std::stod(item), 0.0);
    } else {
      // "re+imj" or "re-imj"
      const auto sign = item.find_last_of("+-", at);
      if (sign == std::string::npos || sign == 0) {
        f.coeffs.emplace_back(0.0, std::stod(item.substr(0, at)));
      } else {
        f.coeffs.emplace_back(std::stod(item.substr(0, sign)),
                              std::stod(item.substr(sign, at - sign)));
      }
    }
  }
  if (f.coeffs.empty()) throw UsageError("--coeffs needs at least one coefficient");
  return f;
}

// ---- build ----------------------------------------------------------------

struct BuildCmd {
  SpecArgs spec;
  TableArgs table;
  std::string circuit_out;
  std::string profile = "unit_gate";
  bool strict = false;

  void add(CLI::App& root) {
    auto* c = root.add_subcommand("build", "construct a QRAM circuit and report resources");
    spec.add(c);
    table.add(c, true);
    c->add_option("--circuit", circuit_out, "write circuit JSON to this path");
    c->add_option("--profile", profile, "unit_gate | surface_code");
    c->add_flag("--strict-toffoli", strict, "cost Toffoli-class gates at 7 T");
    c->callback([this] { run(); });
  }

  void run() {
    const auto s = spec.spec();
    const auto result = qramwb::build(s, table.load());
    qramwb::ResourceProfile prof;
    if (profile == "unit_gate") {
      prof = qramwb::ResourceProfile::unit_gate();
    } else if (profile == "surface_code") {
      prof = qramwb::ResourceProfile::surface_code();
    } else {
      throw UsageError("unknown profile '" + profile + "'");
    }
    prof.strict_toffoli = strict;
    Json j;
    j["schema"] = kSchema;
    j["spec"] = qramwb::spec_to_json(result.spec);
    j["N"] = result.table_size;
    j["padded_N"] = result.padded_size;
    j["word_width"] = result.word_width;
    j["profile"] = prof.label();
    j["report"] = qramwb::report_to_json(qramwb::count_resources(result.circuit, prof));
    j["params"] = result.params;
    if (!circuit_out.empty()) {
      std::ofstream f(circuit_out);
      if (!f) throw UsageError("cannot write '" + circuit_out + "'");
      f << qramwb::circuit_to_json(result.circuit).dump() << '\n';
    }
    emit(j);
  }
};

// ---- verify ---------------------------------------------------------------

struct VerifyCmd {
  SpecArgs spec;
  TableArgs table;
  std::string circuit_in;
  std::string mode = "exhaustive";
  std::uint32_t samples = 64;

  void add(CLI::App& root) {
    auto* c = root.add_subcommand("verify", "simulate and check against table lookup");
    spec.add(c);
    table.add(c, true);
    c->add_option("--circuit", circuit_in, "verify this circuit JSON instead of rebuilding");
    c->add_option("--mode", mode, "exhaustive | sampled");
    c->add_option("--samples", samples, "inputs for sampled mode");
    c->callback([this] { run(); });
  }

  void run() {
    qramwb::VerifyOptions opt;
    if (mode == "exhaustive") {
      opt.mode = qramwb::VerifyMode::Exhaustive;
    } else if (mode == "sampled") {
      opt.mode = qramwb::VerifyMode::Sampled;
      if (!table.seed) throw UsageError("sampled mode needs --seed");
    } else {
      throw UsageError("unknown mode '" + mode + "'");
    }
    opt.samples = samples;
    opt.seed = table.seed.value_or(0);
    const auto t = table.load();
    if (opt.mode == qramwb::VerifyMode::Exhaustive && t.size() > qramwb::kExhaustiveLimit) {
      throw UsageError("exhaustive verification is capped at N = " +
                       std::to_string(qramwb::kExhaustiveLimit));
    }
    const auto s = spec.spec();
    qramwb::VerifyReport report;
    if (circuit_in.empty()) {
      report = qramwb::verify_builder(s, t, opt);
    } else {
      std::ifstream f(circuit_in);
      if (!f) throw UsageError("cannot read '" + circuit_in + "'");
      nlohmann::json cj;
      try {
        f >> cj;
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("circuit file is not JSON: ") + e.what());
      }
      const auto circuit = qramwb::circuit_from_json(cj);
      const auto problems = qramwb::validate(circuit);
      if (!problems.empty()) throw UsageError("invalid circuit: " + problems.front());
      report = qramwb::verify_circuit(circuit, s, t, opt);
    }
    Json j;
    j["schema"] = kSchema;
    merge(j, qramwb::verify_to_json(report));
    emit(j);
    if (!report.passed()) throw VerifyFailed{};
  }
};

// ---- noise ----------------------------------------------------------------

struct NoiseCmd {
  std::string kind;
  std::string sweep = "8:512";
  double p = 1e-3;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool phaseflip = false;
  std::uint32_t protected_levels = 0;

  // persistent
  std::uint32_t pn = 16;
  std::uint32_t queries = 64;
  // derangement
  std::uint32_t m = 2;
  // fit
  std::string input;
  std::string model = "power_in_N";
  std::string builder;

  CLI::App* noise = nullptr;

  void add(CLI::App& root) {
    noise = root.add_subcommand("noise", "Monte Carlo error experiments");
    noise->require_subcommand(0, 1);
    noise->add_option("--kind", kind, "builder kind");
    noise->add_option("--sweep-n", sweep, "lo:hi (powers of two) or a single N");
    noise->add_option("--p", p, "physical error rate");
    noise->add_option("--trials", trials, "trajectories per point");
    noise->add_option("--seed", seed, "seed");
    noise->add_option("--out", out, "CSV path (default stdout)");
    noise->add_flag("--phaseflip", phaseflip, "also inject Z errors");
    noise->add_option("--protected-levels", protected_levels, "error-free routing levels");

    auto* per = noise->add_subcommand("persistent", "routing errors that persist across queries");
    per->add_option("--n", pn, "table size")->required();
    per->add_option("--p", p, "per-node error rate per query")->required();
    per->add_option("--queries", queries, "queries Q");
    per->add_option("--trials", trials, "trajectories");
    per->add_option("--seed", seed, "seed")->required();
    per->callback([this] { persistent(); });

    auto* der = noise->add_subcommand("derangement", "heralded derangement channel model");
    der->add_option("--m", m, "slots")->required();
    der->add_option("--p", p, "physical error rate")->required();
    der->add_option("--trials", trials, "trials");
    der->add_option("--seed", seed, "seed")->required();
    der->callback([this] { derangement(); });

    auto* fit = noise->add_subcommand("fit", "fit a noise CSV");
    fit->add_option("--input", input, "noise CSV")->required();
    fit->add_option("--model", model, "power_in_N | power_in_logN");
    fit->add_option("--builder", builder, "restrict to one builder");
    fit->callback([this] { fit_csv(); });

    noise->final_callback([this] {
      if (noise->get_subcommands().empty()) sweep_run();
    });
  }

  void sweep_run() {
    if (kind.empty()) throw UsageError("noise needs --kind");
    if (!seed) throw UsageError("noise needs --seed");
    qramwb::BuilderSpec spec;
    spec.kind = qramwb::builder_kind_from_name(kind);
    qramwb::NoiseModel model_;
    model_.p = p;
    model_.phaseflip = phaseflip;
    model_.seed = *seed;
    model_.protected_levels = protected_levels;
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty()) {
      file.open(out);
      if (!file) throw UsageError("cannot write '" + out + "'");
      os = &file;
    }
    *os << qramwb::kNoiseCsvHeader << '\n';
    for (auto n : parse_sweep(sweep)) {
      std::cerr << "noise: " << kind << " N=" << n << '\n';
      const auto e = qramwb::estimate_infidelity(spec, n, model_, trials);
      *os << qramwb::noise_csv_row(e) << '\n';
      os->flush();
    }
  }

  void persistent() {
    const auto curve = qramwb::simulate_persistent_accumulation(pn, p, queries, trials, *seed);
    std::vector<qramwb::ScalingPoint> pts;
    for (std::size_t q = 0; q < curve.fraction.size(); ++q) {
      if (curve.fraction[q] > 0) pts.push_back({static_cast<double>(q + 1), curve.fraction[q], 0});
    }
    Json j;
    j["schema"] = kSchema;
    j["N"] = curve.n;
    j["p"] = curve.p;
    j["trials"] = curve.trials;
    j["seed"] = *seed;
    j["fraction"] = curve.fraction;
    if (pts.size() >= 2) {
      j["fit"] = qramwb::fit_to_json(qramwb::fit_power_law(pts, qramwb::FitModel::PowerInN));
    } else {
      j["fit"] = nullptr;
    }
    emit(j);
  }

  void derangement() {
    const auto r = qramwb::simulate_derangement(m, p, trials, *seed);
    Json j;
    j["schema"] = kSchema;
    j["m"] = r.m;
    j["p"] = r.p;
    j["trials"] = r.trials;
    j["seed"] = *seed;
    j["passed"] = r.passed;
    j["wrong_after_pass"] = r.wrong_after_pass;
    j["herald_pass_rate"] = r.herald_pass_rate;
    j["herald_failure_rate"] = 1.0 - r.herald_pass_rate;
    j["conditional_infidelity"] = r.conditional_infidelity;
    emit(j);
  }

  void fit_csv() {
    std::ifstream f(input);
    if (!f) throw UsageError("cannot read '" + input + "'");
    std::vector<qramwb::ScalingPoint> pts;
    for (const auto& e : qramwb::read_noise_csv(f)) {
      if (!builder.empty() && e.builder != builder) continue;
      pts.push_back({static_cast<double>(e.n), e.infidelity, (e.ci.hi - e.ci.lo) / 2});
    }
    Json j;
    j["schema"] = kSchema;
    j["input"] = input;
    merge(j, qramwb::fit_to_json(qramwb::fit_scaling(pts, qramwb::fit_model_from_name(model))));
    emit(j);
  }
};

// ---- bounds ---------------------------------------------------------------

struct BoundsCmd {
  std::uint64_t W = 1, D = 1, G = 0, g = 1, k = 1;
  double n = 1, terms = 1, t = 1, E = 1, Wd = 2, delta = 0, d = 1, ell = 1;
  std::string mode = "summary";
  std::uint32_t locality = 2, dim = 4, dd = 1, nn = 16, ell_i = 1;
  std::uint64_t trials = 100;
  std::optional<std::uint64_t> seed;
  bool uniform = false;

  void add(CLI::App& root) {
    auto* b = root.add_subcommand("bounds", "analytic bound calculators");
    b->require_subcommand(1);

    auto* cc = b->add_subcommand("circuit-count", "lg of the circuit-count bound");
    cc->add_option("--W", W)->required();
    cc->add_option("--D", D)->required();
    cc->add_option("--G", G)->required();
    cc->add_option("--g", g)->required();
    cc->add_option("--k", k)->required();
    cc->callback([this] {
      const double v = qramwb::log2_circuit_count({W, D, G, g, k});
      Json j{{"schema", kSchema}, {"op", "circuit-count"}, {"W", W}, {"D", D}, {"G", G},
             {"g", g}, {"k", k}, {"value", v}, {"flags", Json::object()}};
      emit(j);
    });

    auto* mg = b->add_subcommand("min-gates", "smallest G able to encode N bits");
    mg->add_option("--n", n)->required();
    mg->add_option("--W", W)->required();
    mg->add_option("--D", D)->required();
    mg->add_option("--g", g)->required();
    mg->add_option("--k", k)->required();
    mg->callback([this] {
      const auto r = qramwb::min_gates_for_table(n, W, D, g, k);
      Json j{{"schema", kSchema}, {"op", "min-gates"}, {"N", n}, {"W", W}, {"D", D},
             {"g", g}, {"k", k}};
      j["value"] = r.feasible ? Json(r.gates) : Json(nullptr);
      j["capacity"] = r.capacity;
      j["capacity_prev"] = r.capacity_prev;
      j["search_limit"] = r.search_limit;
      j["flags"] = {{"feasible", r.feasible}};
      emit(j);
    });

    auto* bc = b->add_subcommand("ballistic", "passive-QRAM energy/time constraint");
    bc->add_option("--terms", terms, "Hamiltonian terms n")->required();
    bc->add_option("--t", t)->required();
    bc->add_option("--E", E)->required();
    bc->add_option("--W", Wd)->required();
    bc->add_option("--n", n, "table size N")->required();
    bc->add_option("--mode", mode, "summary | stirling");
    bc->add_option("--locality", locality, "term locality for stirling mode");
    bc->callback([this] {
      qramwb::BallisticMode bm;
      if (mode == "summary") {
        bm = qramwb::BallisticMode::Summary;
      } else if (mode == "stirling") {
        bm = qramwb::BallisticMode::Stirling;
      } else {
        throw UsageError("unknown mode '" + mode + "'");
      }
      const auto r = qramwb::ballistic_constraint({terms, t, E, Wd, n}, bm, locality);
      Json j{{"schema", kSchema}, {"op", "ballistic"}, {"terms", terms}, {"t", t}, {"E", E},
             {"W", Wd}, {"N", n}, {"mode", mode}};
      j["value"] = r.lhs;
      j["rhs"] = r.rhs;
      j["slack"] = r.slack;
      if (bm == qramwb::BallisticMode::Stirling) j["num_terms"] = r.num_terms;
      j["flags"] = {{"satisfied", r.satisfied}};
      emit(j);
    });

    auto* hf = b->add_subcommand("ham-floor", "Hamiltonian distance floor");
    hf->add_option("--delta", delta)->required();
    hf->add_option("--t", t)->required();
    hf->callback([this] {
      const auto r = qramwb::hamiltonian_distance_floor(delta, t);
      Json j{{"schema", kSchema}, {"op", "ham-floor"}, {"delta", delta}, {"t", t},
             {"value", r.floor}, {"lower", r.lower}, {"flags", Json::object()}};
      emit(j);
    });

    auto* hv = b->add_subcommand("ham-verify", "random check of the Hamiltonian distance floor");
    hv->add_option("--dim", dim)->required();
    hv->add_option("--trials", trials);
    hv->add_option("--t", t)->required();
    hv->add_option("--seed", seed)->required();
    hv->callback([this] {
      const auto r = qramwb::verify_hamiltonian_lemma(dim, trials, t, *seed);
      Json j{{"schema", kSchema}, {"op", "ham-verify"}, {"dim", dim}, {"trials", trials},
             {"t", t}, {"seed", *seed}, {"value", r.violations}, {"max_ratio", r.max_ratio},
             {"flags", {{"holds", r.violations == 0}}}};
      emit(j);
    });

    auto* dc = b->add_subcommand("distill-cap", "distillation fidelity cap");
    dc->add_option("--d", d)->required();
    dc->add_option("--n", n)->required();
    dc->add_option("--ell", ell);
    dc->callback([this] {
      const auto r = qramwb::distillation_fidelity_cap(d, n, ell);
      Json j{{"schema", kSchema}, {"op", "distill-cap"}, {"d", d}, {"N", n}, {"ell", ell},
             {"value", r.value}, {"raw", r.raw}, {"flags", {{"vacuous", r.vacuous}}}};
      emit(j);
    });

    auto* iv = b->add_subcommand("indist-verify", "indistinguishable-tables check");
    iv->add_option("--d", dd)->required();
    iv->add_option("--n", nn)->required();
    iv->add_option("--ell", ell_i);
    iv->add_option("--trials", trials);
    iv->add_option("--seed", seed);
    iv->add_flag("--uniform", uniform, "uniform superposition states instead of random");
    iv->callback([this] { indist(); });
  }

  void indist() {
    if (!uniform && !seed) throw UsageError("random states need --seed");
    std::uint64_t violations = 0, violations_derived = 0, runs = uniform ? 1 : trials;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < runs; ++i) {
      const auto states = uniform ? qramwb::uniform_query_states(dd, nn)
                                  : qramwb::random_query_states(dd, nn, qramwb::stream_key(*seed, i));
      const auto r = qramwb::verify_indistinguishable_tables(states, ell_i);
      if (!r.holds) ++violations;
      if (!r.holds_derived) ++violations_derived;
      worst = std::max(worst, r.sum_delta / r.stated_bound);
    }
    Json j{{"schema", kSchema}, {"op", "indist-verify"}, {"d", dd}, {"N", nn}, {"ell", ell_i},
           {"trials", runs}};
    if (seed) j["seed"] = *seed;
    j["value"] = violations;
    j["violations_derived_bound"] = violations_derived;
    j["max_sum_over_bound"] = worst;
    j["flags"] = {{"holds", violations == 0}, {"holds_derived", violations_derived == 0}};
    emit(j);
  }
};

// ---- cost -----------------------------------------------------------------

struct CostCmd {
  double n = 1024, d = 8, k = 1, P = 1;
  std::string model = "shared_memory";
  std::string format = "md";
  std::string matrix, vector, coeffs = "0,1";
  std::uint32_t rn = 0, rd = 4;
  std::optional<std::uint64_t> seed;
  bool no_rescale = false, oracle = false;

  void add(CLI::App& root) {
    auto* c = root.add_subcommand("cost", "classical parallel cost models");
    c->require_subcommand(1);

    auto* st = c->add_subcommand("steps", "time steps of one parallel matvec");
    st->add_option("--n", n)->required();
    st->add_option("--d", d)->required();
    st->add_option("--P", P)->required();
    st->add_option("--model", model, "shared_memory | hypercube_sort | mesh2d_sort | dense_grid");
    st->callback([this] {
      Json j;
      j["schema"] = kSchema;
      merge(j, qramwb::stepcount_to_json(
                   qramwb::stepcount_models(n, d, P, qramwb::step_model_from_name(model))));
      emit(j);
    });

    auto* rg = c->add_subcommand("regime", "regime verdicts for (N, d, k)");
    rg->add_option("--n", n)->required();
    rg->add_option("--d", d)->required();
    rg->add_option("--k", k)->required();
    rg->add_option("--format", format, "md | json");
    rg->callback([this] {
      const auto rows = qramwb::regime_table(n, d, k);
      if (format == "md") {
        std::cout << qramwb::regime_table_markdown(rows);
      } else if (format == "json") {
        Json j;
        j["schema"] = kSchema;
        merge(j, qramwb::regime_table_to_json(rows, n, d, k));
        emit(j);
      } else {
        throw UsageError("unknown format '" + format + "'");
      }
    });

    auto* tr = c->add_subcommand("transform", "polynomial eigenvalue transform f(H)v");
    tr->add_option("--matrix", matrix, "Matrix Market file");
    tr->add_option("--vector", vector, "vector file, one value per line");
    tr->add_option("--random-n", rn, "use a random d-sparse Hermitian matrix of this size");
    tr->add_option("--sparsity", rd, "sparsity of the random matrix");
    tr->add_option("--seed", seed, "seed for the random matrix and vector");
    tr->add_option("--coeffs", coeffs, "a0,a1,...; complex as re+imj");
    tr->add_flag("--no-rescale", no_rescale, "skip the unit-norm rescaling");
    tr->add_flag("--oracle", oracle, "also report the dense eigendecomposition error");
    tr->callback([this] { transform(); });
  }

  void transform() {
    qramwb::SparseMatrix h;
    qramwb::CVector v;
    if (rn > 0) {
      if (!seed) throw UsageError("--random-n needs --seed");
      h = qramwb::random_sparse_hermitian(rn, rd, *seed);
      qramwb::StreamRng rng(*seed, 0x766563ULL);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (std::uint32_t i = 0; i < rn; ++i) v.emplace_back(gauss(rng), gauss(rng));
    } else {
      if (matrix.empty() || vector.empty()) throw UsageError("need --matrix and --vector");
      std::ifstream fm(matrix), fv(vector);
      if (!fm) throw UsageError("cannot read '" + matrix + "'");
      if (!fv) throw UsageError("cannot read '" + vector + "'");
      h = qramwb::read_matrix_market(fm);
      v = qramwb::read_vector(fv);
    }
    if (!h.is_hermitian()) throw UsageError("matrix is not Hermitian");
    const double factor = no_rescale ? 1.0 : qramwb::rescale_to_unit_norm(h);
    const auto f = parse_coeffs(coeffs);
    const auto r = qramwb::poly_eigen_transform(h, v, f);
    Json j;
    j["schema"] = kSchema;
    j["N"] = h.size();
    j["d"] = h.sparsity();
    j["k"] = f.degree();
    j["matvecs"] = r.matvecs;
    j["rescale"] = factor;
    j["poly_bounded"] = f.bounded_on_unit_interval();
    auto out = Json::array();
    for (const auto& a : r.v) out.push_back({a.real(), a.imag()});
    j["vector"] = out;
    if (oracle) {
      j["oracle_relative_error"] =
          qramwb::relative_error(r.v, qramwb::eigen_oracle(h.dense(), v, f));
    }
    emit(j);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qramwb: circuit QRAM workbench"};
  app.require_subcommand(1);
  BuildCmd build;
  VerifyCmd verify;
  NoiseCmd noise;
  BoundsCmd bounds;
  CostCmd cost;
  build.add(app);
  verify.add(app);
  noise.add(app);
  bounds.add(app);
  cost.add(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const VerifyFailed&) {
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
