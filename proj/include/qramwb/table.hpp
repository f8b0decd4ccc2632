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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qramwb {

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Classical memory of N words, each w bits wide (1 <= w <= 64).
class BitTable {
 public:
  BitTable() = default;
  BitTable(std::vector<std::uint64_t> words, std::uint32_t word_width);

  std::uint32_t size() const { return static_cast<std::uint32_t>(words_.size()); }
  std::uint32_t word_width() const { return width_; }
  std::uint64_t word(std::uint32_t i) const { return words_.at(i); }
  bool bit(std::uint32_t i, std::uint32_t b) const { return (words_.at(i) >> b) & 1U; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Zero-extended copy of length `n` (n >= size()).
  BitTable padded(std::uint32_t n) const;

  friend bool operator==(const BitTable&, const BitTable&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::uint32_t width_ = 1;
};

/// Smallest n with 2^n >= N.
std::uint32_t ceil_log2(std::uint64_t n);
/// Address register size: ceil_log2(N), at least 1.
std::uint32_t address_bits(std::uint32_t n);

BitTable random_table(std::uint32_t n, std::uint32_t word_width, std::uint64_t seed);

/// Packed little-endian bit stream: bit k of the stream is bit (k mod w) of
/// word floor(k / w); stream bit k lives in byte k/8 at position k%8.
std::vector<std::uint8_t> pack_bits(const BitTable& table);
BitTable unpack_bits(const std::vector<std::uint8_t>& bytes, std::uint32_t n,
                     std::uint32_t word_width);

/// Hex text of the packed stream, two digits per byte, byte 0 first.
std::string table_to_hex(const BitTable& table);
BitTable table_from_hex(std::string_view hex, std::uint32_t n, std::uint32_t word_width);

/// Binary file: "QTBL", u32 N, u32 w (little endian), packed stream.
void write_table_file(const std::string& path, const BitTable& table);
BitTable read_table_file(const std::string& path);

}  // namespace qramwb
