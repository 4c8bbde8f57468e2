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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "qsky/experiments.hpp"

namespace qsky {

// Result table. Floats are written with 17 significant digits so they read
// back bit-exact; missing optional values are empty cells and booleans are
// 0/1.
inline constexpr const char* kResultCsvHeader =
    "experiment,channel,sweep_value,l1,l2,n_initial,n_final,valid_fraction,singular,"
    "boundary_phi,wall_time";

std::string format_double(double v);

void write_results_csv(std::ostream& out, const ExperimentResult& result);
void write_results_csv(const std::filesystem::path& path, const ExperimentResult& result);

/// Throws std::runtime_error with the offending line number on a bad header,
/// wrong column count or unparsable number.
ExperimentResult read_results_csv(std::istream& in);
ExperimentResult read_results_csv(const std::filesystem::path& path);

}  // namespace qsky
