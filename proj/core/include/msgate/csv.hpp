// Copyright 2026 The msgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "msgate/gate_sim.hpp"

namespace msgate {

/// 64-bit FNV-1a of `text` as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

/// Provenance written as '#' comment lines ahead of the column header.
struct CsvMeta {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

/// Numeric table in scientific notation with LF line endings.
std::string format_csv(const CsvMeta& meta, const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows);
void write_csv(const std::string& path, const CsvMeta& meta, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

/// Columns: axis names..., mean_infidelity, stderr, n_traj.
void write_scan_csv(const std::string& path, const CsvMeta& meta, const ScanResult& scan);

}  // namespace msgate
