// Copyright 2026 The qsky Authors
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

#include "qsky/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace qsky {

namespace {

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  const auto bits = std::bit_cast<U>(value);
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out.push_back(static_cast<std::uint8_t>((bits >> (8 * b)) & 0xFFu));
  }
}

template <typename T>
T get_le(const std::vector<std::uint8_t>& in, std::size_t offset) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    bits |= static_cast<U>(in[offset + b]) << (8 * b);
  }
  return std::bit_cast<T>(bits);
}

}  // namespace

std::vector<std::uint8_t> encode_skgf(const Grid& grid, const std::vector<ScalarField>& components) {
  for (const auto& c : components) require_same_grid(grid, c.grid(), "encode_skgf");
  std::vector<std::uint8_t> out;
  out.reserve(kSkgfHeaderBytes + components.size() * grid.size() * 8);
  for (char ch : {'S', 'K', 'G', 'F'}) out.push_back(static_cast<std::uint8_t>(ch));
  put_le(out, kSkgfVersion);
  put_le(out, static_cast<std::uint32_t>(grid.nx));
  put_le(out, static_cast<std::uint32_t>(grid.ny));
  put_le(out, grid.extent);
  put_le(out, static_cast<std::uint32_t>(components.size()));
  for (const auto& c : components) {
    for (double v : c.values()) put_le(out, v);
  }
  return out;
}

SkgfSnapshot decode_skgf(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kSkgfHeaderBytes) {
    throw std::runtime_error("SKGF: truncated header (" + std::to_string(bytes.size()) + " bytes)");
  }
  if (std::memcmp(bytes.data(), "SKGF", 4) != 0) throw std::runtime_error("SKGF: bad magic");
  const auto version = get_le<std::uint32_t>(bytes, 4);
  if (version != kSkgfVersion) {
    throw std::runtime_error("SKGF: unsupported version " + std::to_string(version));
  }
  const auto nx = get_le<std::uint32_t>(bytes, 8);
  const auto ny = get_le<std::uint32_t>(bytes, 12);
  const auto extent = get_le<double>(bytes, 16);
  const auto ncomp = get_le<std::uint32_t>(bytes, 24);
  const std::size_t per = static_cast<std::size_t>(nx) * ny;
  const std::size_t expected = kSkgfHeaderBytes + static_cast<std::size_t>(ncomp) * per * 8;
  if (bytes.size() != expected) {
    throw std::runtime_error("SKGF: payload is " + std::to_string(bytes.size()) +
                             " bytes, header implies " + std::to_string(expected));
  }
  SkgfSnapshot snap;
  snap.grid = make_grid(nx, ny, extent);
  snap.components.resize(ncomp);
  std::size_t offset = kSkgfHeaderBytes;
  for (auto& comp : snap.components) {
    comp.resize(per);
    for (auto& v : comp) {
      v = get_le<double>(bytes, offset);
      offset += 8;
    }
  }
  return snap;
}

void write_skgf(const std::filesystem::path& path, const Grid& grid,
                const std::vector<ScalarField>& components) {
  const auto bytes = encode_skgf(grid, components);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

SkgfSnapshot read_skgf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_skgf(bytes);
}

}  // namespace qsky
