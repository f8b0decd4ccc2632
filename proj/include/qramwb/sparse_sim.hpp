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
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qramwb/builders.hpp"
#include "qramwb/circuit.hpp"
#include "qramwb/table.hpp"

namespace qramwb {

class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Amplitude = std::complex<double>;

/// Basis bitstring over a circuit's flat qubit order (register-major,
/// little endian inside each register).
class BasisKey {
 public:
  BasisKey() = default;
  explicit BasisKey(std::size_t width) : words_((width + 63) / 64, 0) {}

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void set(std::size_t i, bool v) {
    if (get(i) != v) flip(i);
  }
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BasisKey&, const BasisKey&) = default;
  friend auto operator<=>(const BasisKey&, const BasisKey&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

/// Reads register `reg` of `key` as an unsigned integer (first 64 bits).
std::uint64_t read_register(const BasisKey& key, const Circuit& layout, std::string_view reg);
void write_register(BasisKey& key, const Circuit& layout, std::string_view reg,
                    std::uint64_t value);
/// Basis key with every prepared qubit set and everything else zero.
BasisKey initial_key(const Circuit& layout);

/// Sparse amplitude map kept as a key-sorted vector of distinct keys.
class SparseState {
 public:
  static constexpr std::size_t kDefaultCap = std::size_t{1} << 16;

  explicit SparseState(std::size_t width, std::size_t cap = kDefaultCap);
  static SparseState basis(const BasisKey& key, std::size_t width,
                           std::size_t cap = kDefaultCap);

  /// Adds `amp` to the amplitude of `key`.
  void add(const BasisKey& key, Amplitude amp);
  Amplitude amplitude(const BasisKey& key) const;

  std::size_t width() const { return width_; }
  std::size_t cap() const { return cap_; }
  std::size_t support() const { return entries_.size(); }
  double norm_squared() const;
  const std::vector<std::pair<BasisKey, Amplitude>>& entries() const { return entries_; }
  std::vector<std::pair<BasisKey, Amplitude>>& mutable_entries() { return entries_; }

  /// Sorts, merges equal keys and drops amplitudes below 1e-15.
  void normalize_storage();

 private:
  std::size_t width_;
  std::size_t cap_;
  std::vector<std::pair<BasisKey, Amplitude>> entries_;
};

void apply_gate(SparseState& state, const Circuit& layout, const Gate& gate);
SparseState run(const Circuit& circuit, SparseState input);

/// Largest distance between two states' amplitude maps.
double max_amplitude_deviation(const SparseState& a, const SparseState& b);

enum class VerifyMode { Exhaustive, Sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Exhaustive;
  std::uint32_t samples = 64;
  std::uint64_t seed = 0;
};

struct InputResult {
  std::vector<std::uint64_t> input;  // addresses (and ctl value when controlled)
  bool pass = true;
  std::vector<std::uint64_t> expected;
  std::vector<std::uint64_t> got;
  std::string detail;
};

struct VerifyReport {
  nlohmann::ordered_json spec;
  std::uint32_t n = 0;
  std::string mode;
  std::uint64_t tested = 0;
  std::vector<InputResult> results;
  bool ancilla_clean = true;
  double max_dev = 0.0;

  std::size_t failure_count() const;
  bool passed() const { return failure_count() == 0 && ancilla_clean; }
};

inline constexpr std::uint32_t kExhaustiveLimit = 256;

/// Checks |i>|0>(|mem>) -> |i>|T_i>(|mem>) on basis inputs with every
/// ancilla restored. `circuit` must use the register conventions of
/// builders.hpp.
VerifyReport verify_circuit(const Circuit& circuit, const BuilderSpec& spec, const BitTable& table,
                            const VerifyOptions& options);
VerifyReport verify_builder(const BuilderSpec& spec, const BitTable& table,
                            const VerifyOptions& options);

nlohmann::ordered_json verify_to_json(const VerifyReport& report);

}  // namespace qramwb
