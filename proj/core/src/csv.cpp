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

#include <cstdio>
#include <fstream>

#include "msgate/csv.hpp"

namespace msgate {

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_csv(const CsvMeta& meta, const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows) {
  require(!columns.empty(), "format_csv: no columns");
  std::string out = "# config_hash: " + meta.config_hash + "\n# seed: " + std::to_string(meta.seed) + "\n";
  for (const auto& n : meta.notes) out += "# " + n + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  char buf[32];
  for (const auto& r : rows) {
    require(r.size() == columns.size(), "format_csv: row width does not match the header");
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.10e", r[i]);
      if (i) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const CsvMeta& meta, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  const std::string text = format_csv(meta, columns, rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_csv: cannot open " + path);
  out << text;
  if (!out) throw Error("write_csv: write failed for " + path);
}

void write_scan_csv(const std::string& path, const CsvMeta& meta, const ScanResult& scan) {
  std::vector<std::string> cols = scan.axis_names;
  cols.insert(cols.end(), {"mean_infidelity", "stderr", "n_traj"});
  std::vector<std::vector<double>> rows;
  rows.reserve(scan.points.size());
  for (const auto& p : scan.points) {
    require(p.axis.size() == scan.axis_names.size(), "write_scan_csv: axis width mismatch");
    std::vector<double> r = p.axis;
    r.insert(r.end(), {p.mean_infidelity, p.stderr_infidelity, static_cast<double>(p.n_traj)});
    rows.push_back(std::move(r));
  }
  CsvMeta m = meta;
  for (const auto& w : scan.warnings) m.notes.push_back("warning: " + w);
  write_csv(path, m, cols, rows);
}

}  // namespace msgate
