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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qsky/grid.hpp"

namespace qsky {

// SKGF field snapshot, all integers and floats little-endian:
//
//   offset  size  content
//   0       4     magic "SKGF"
//   4       4     u32 version (1)
//   8       4     u32 nx
//   12      4     u32 ny
//   16      8     f64 extent
//   24      4     u32 components
//   28      ...   components * nx * ny f64, component-major, each component
//                 row-major in Grid::index order
inline constexpr std::uint32_t kSkgfVersion = 1;
inline constexpr std::size_t kSkgfHeaderBytes = 28;

struct SkgfSnapshot {
  Grid grid;
  std::vector<std::vector<double>> components;
};

std::vector<std::uint8_t> encode_skgf(const Grid& grid, const std::vector<ScalarField>& components);
/// Throws std::runtime_error on bad magic, version, or truncated payload.
SkgfSnapshot decode_skgf(const std::vector<std::uint8_t>& bytes);

void write_skgf(const std::filesystem::path& path, const Grid& grid,
                const std::vector<ScalarField>& components);
SkgfSnapshot read_skgf(const std::filesystem::path& path);

}  // namespace qsky
