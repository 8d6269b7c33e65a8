// Copyright 2026 The rfflab Authors
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

// Minimal CSV writer: header row, comma separator, LF line endings, floats
// with 17 significant digits (round-trips every double).

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "rfflab/errors.hpp"

namespace rfflab {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header) : os_(os), columns_(header.size()) {
    write_cells(header);
  }

  template <typename... Cells>
  void row(const Cells&... cells) {
    if (sizeof...(Cells) != columns_) throw InputError("CSV row has the wrong number of cells");
    std::vector<std::string> out;
    out.reserve(columns_);
    (out.push_back(cell(cells)), ...);
    write_cells(out);
  }

  std::size_t rows_written() const { return rows_; }

 private:
  template <typename T>
  static std::string cell(const T& v) {
    if constexpr (std::is_floating_point_v<T>) {
      return format_double(static_cast<double>(v));
    } else if constexpr (std::is_integral_v<T>) {
      return std::to_string(v);
    } else {
      return std::string(std::string_view(v));
    }
  }

  void write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << '\n';
    ++rows_;
  }

  std::ostream& os_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

}  // namespace rfflab
