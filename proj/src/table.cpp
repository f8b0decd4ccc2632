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

#include "qramwb/table.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "qramwb/rng.hpp"

namespace qramwb {

namespace {

std::uint64_t word_mask(std::uint32_t w) { return w >= 64 ? ~0ULL : ((1ULL << w) - 1); }

void put_u32(std::ofstream& out, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) throw TableError("truncated table header");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

BitTable::BitTable(std::vector<std::uint64_t> words, std::uint32_t word_width)
    : words_(std::move(words)), width_(word_width) {
  if (words_.empty()) throw TableError("table must have N >= 1 entries");
  if (width_ < 1 || width_ > 64) throw TableError("word width must be in [1, 64]");
  for (auto w : words_) {
    if ((w & ~word_mask(width_)) != 0) throw TableError("table word does not fit in word width");
  }
}

BitTable BitTable::padded(std::uint32_t n) const {
  if (n < size()) throw TableError("cannot pad to a smaller size");
  auto w = words_;
  w.resize(n, 0);
  return BitTable(std::move(w), width_);
}

std::uint32_t ceil_log2(std::uint64_t n) {
  std::uint32_t r = 0;
  while ((std::uint64_t{1} << r) < n) ++r;
  return r;
}

std::uint32_t address_bits(std::uint32_t n) { return std::max<std::uint32_t>(1, ceil_log2(n)); }

BitTable random_table(std::uint32_t n, std::uint32_t word_width, std::uint64_t seed) {
  StreamRng rng(seed, 0x7461626cULL);
  std::vector<std::uint64_t> words(n);
  for (auto& w : words) w = rng() & word_mask(word_width);
  return BitTable(std::move(words), word_width);
}

std::vector<std::uint8_t> pack_bits(const BitTable& table) {
  const std::uint64_t bits = std::uint64_t{table.size()} * table.word_width();
  std::vector<std::uint8_t> bytes((bits + 7) / 8, 0);
  for (std::uint64_t k = 0; k < bits; ++k) {
    const auto i = static_cast<std::uint32_t>(k / table.word_width());
    const auto b = static_cast<std::uint32_t>(k % table.word_width());
    if (table.bit(i, b)) bytes[k / 8] |= static_cast<std::uint8_t>(1U << (k % 8));
  }
  return bytes;
}

BitTable unpack_bits(const std::vector<std::uint8_t>& bytes, std::uint32_t n,
                     std::uint32_t word_width) {
  if (n == 0) throw TableError("table must have N >= 1 entries");
  if (word_width < 1 || word_width > 64) throw TableError("word width must be in [1, 64]");
  const std::uint64_t bits = std::uint64_t{n} * word_width;
  if (bytes.size() != (bits + 7) / 8) {
    throw TableError("packed table has " + std::to_string(bytes.size()) + " bytes, expected " +
                     std::to_string((bits + 7) / 8));
  }
  std::vector<std::uint64_t> words(n, 0);
  for (std::uint64_t k = 0; k < bits; ++k) {
    if ((bytes[k / 8] >> (k % 8)) & 1U) words[k / word_width] |= 1ULL << (k % word_width);
  }
  for (std::uint64_t k = bits; k < bytes.size() * 8; ++k) {
    if ((bytes[k / 8] >> (k % 8)) & 1U) throw TableError("nonzero padding bits in packed table");
  }
  return BitTable(std::move(words), word_width);
}

std::string table_to_hex(const BitTable& table) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : pack_bits(table)) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

BitTable table_from_hex(std::string_view hex, std::uint32_t n, std::uint32_t word_width) {
  if (hex.size() % 2 != 0) throw TableError("hex table must have an even number of digits");
  auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw TableError(std::string("invalid hex digit '") + c + "'");
  };
  std::vector<std::uint8_t> bytes;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    bytes.push_back(static_cast<std::uint8_t>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
  }
  return unpack_bits(bytes, n, word_width);
}

void write_table_file(const std::string& path, const BitTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TableError("cannot open '" + path + "' for writing");
  out.write("QTBL", 4);
  put_u32(out, table.size());
  put_u32(out, table.word_width());
  const auto bytes = pack_bits(table);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw TableError("write to '" + path + "' failed");
}

BitTable read_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableError("cannot open table file '" + path + "'");
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (!in || std::string(magic.data(), 4) != "QTBL") throw TableError("bad table magic");
  const auto n = get_u32(in);
  const auto w = get_u32(in);
  if (n == 0 || w == 0 || w > 64) throw TableError("bad table header");
  const std::uint64_t nbytes = (std::uint64_t{n} * w + 7) / 8;
  std::vector<std::uint8_t> bytes(nbytes);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(nbytes));
  if (static_cast<std::uint64_t>(in.gcount()) != nbytes) throw TableError("truncated table body");
  return unpack_bits(bytes, n, w);
}

}  // namespace qramwb
