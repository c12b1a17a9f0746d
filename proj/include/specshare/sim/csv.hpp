// Copyright 2026 The specshare Authors
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

// CSV writing with shortest round-trip number formatting.

#ifndef SPECSHARE_SIM_CSV_HPP_
#define SPECSHARE_SIM_CSV_HPP_

#include <charconv>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace specshare::sim {

// Shortest decimal that parses back to the same double.
inline std::string format_double(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string_view> header) {
    row_.assign(header.begin(), header.end());
    end_row();
  }

  CsvWriter& add(double v) { return add_text(format_double(v)); }
  CsvWriter& add(long long v) { return add_text(std::to_string(v)); }
  CsvWriter& add(int v) { return add_text(std::to_string(v)); }
  CsvWriter& add(std::string_view v) { return add_text(quote(v)); }
  CsvWriter& add(const char* v) { return add(std::string_view(v)); }

  void end_row() {
    for (std::size_t k = 0; k < row_.size(); ++k) {
      if (k) text_ += ',';
      text_ += row_[k];
    }
    text_ += '\n';
    row_.clear();
  }

  const std::string& str() const { return text_; }

 private:
  CsvWriter& add_text(std::string s) {
    row_.push_back(std::move(s));
    return *this;
  }

  static std::string quote(std::string_view v) {
    if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
    std::string out = "\"";
    for (char c : v) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + '"';
  }

  std::vector<std::string> row_;
  std::string text_;
};

}  // namespace specshare::sim

#endif  // SPECSHARE_SIM_CSV_HPP_
