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

#include "qthermo/csv.hpp"

#include <cstdio>
#include <fstream>

#include "qthermo/errors.hpp"

namespace qthermo {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buffer[20];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

void CsvTable::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

void CsvTable::set_columns(std::vector<std::string> names) {
  columns_ = std::move(names);
}

void CsvTable::add_row(std::vector<std::string> cells) {
  rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream& os) const {
  for (const auto& [key, value] : metadata_) {
    os << "# " << key << " = " << value << "\n";
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    os << (i == 0 ? "" : ",") << columns_[i];
  }
  os << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i == 0 ? "" : ",") << row[i];
    }
    os << "\n";
  }
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open output file: " + path);
  }
  write(out);
  if (!out) {
    throw ConfigError("failed while writing output file: " + path);
  }
}

}  // namespace qthermo
