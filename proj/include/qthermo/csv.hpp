// Copyright 2026 The qthermo Authors
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

#ifndef QTHERMO_CSV_HPP
#define QTHERMO_CSV_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qthermo {

// 17 significant digits: round-trip exact for IEEE doubles.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

// CSV table with a '#'-prefixed metadata header. Deterministic byte output
// for identical metadata and cells.
class CsvTable {
 public:
  void add_metadata(std::string key, std::string value);
  void set_columns(std::vector<std::string> names);
  void add_row(std::vector<std::string> cells);
  std::vector<std::string>& row(std::size_t i) { return rows_[i]; }
  std::size_t row_count() const { return rows_.size(); }

  void write(std::ostream& os) const;
  void write_file(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> metadata_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace qthermo

#endif  // QTHERMO_CSV_HPP
