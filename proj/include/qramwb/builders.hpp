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
#include <optional>
#include <stdexcept>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qramwb/circuit.hpp"
#include "qramwb/table.hpp"

namespace qramwb {

class BuilderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BuilderKind {
  Unary,
  Recursive,
  BucketBrigade,
  BadReadoutBB,
  SelectSwap,
  FanoutSwapQraqm,
  ParallelSorted,
};

std::string_view builder_kind_name(BuilderKind kind);
BuilderKind builder_kind_from_name(std::string_view name);

enum class Uncompute { Coherent, MeasurementBased };

std::string_view uncompute_name(Uncompute u);
Uncompute uncompute_from_name(std::string_view name);

struct BuilderSpec {
  BuilderKind kind = BuilderKind::Unary;
  std::uint32_t page_log = 0;     // select_swap
  std::uint32_t query_count = 1;  // parallel_sorted
  std::optional<Uncompute> uncompute;
  bool controlled = false;    // recursive
  bool swap_variant = false;  // fanout_swap_qraqm

  /// Explicit mode, or the kind's default (measurement-based for
  /// recursive, coherent otherwise).
  Uncompute effective_uncompute() const;
};

nlohmann::ordered_json spec_to_json(const BuilderSpec& spec);

/// Register names shared by every builder:
///   addr  address bits, addr[0] least significant
///   out   output word, out[0] least significant
///   ctl   outer control (controlled recursive only)
///   mem   quantum memory (fanout_swap_qraqm), cell i at mem[i*w .. i*w+w-1]
///   addr<j>, out<j>  query j (parallel_sorted)
/// Every other register is ancilla and must end in its initial value:
/// |0>, or |1> for prepared qubits.
struct BuildResult {
  Circuit circuit;
  BuilderSpec spec;
  std::uint32_t table_size = 0;   // N as given
  std::uint32_t padded_size = 0;  // N after zero padding
  std::uint32_t word_width = 1;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
};

/// Validates `spec` against the table and dispatches. For
/// fanout_swap_qraqm only the table size and word width are used.
BuildResult build(const BuilderSpec& spec, const BitTable& table);

Circuit build_unary(const BitTable& table);
Circuit build_recursive(const BitTable& table, bool controlled,
                        Uncompute uncompute = Uncompute::MeasurementBased);
Circuit build_bucket_brigade(const BitTable& table);
Circuit build_bad_readout_bb(const BitTable& table);
Circuit build_select_swap(const BitTable& table, std::uint32_t page_log,
                          Uncompute uncompute = Uncompute::Coherent);
Circuit build_fanout_swap_qraqm(std::uint32_t n, std::uint32_t word_width = 1,
                                bool swap_variant = false);
Circuit build_parallel_sorted(const BitTable& table, std::uint32_t query_count);

/// Comparator list (lo, hi) of the bitonic network on m = 2^r records;
/// each comparator leaves key(lo) <= key(hi).
std::vector<std::pair<std::uint32_t, std::uint32_t>> bitonic_comparators(std::uint32_t m);

/// Closed-form CSWAP count of the bucket-brigade builder.
std::uint64_t bucket_brigade_cswaps(std::uint32_t n, std::uint32_t word_width);

}  // namespace qramwb
