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

// Per-slot renewable caps and MT counts:
//
//   slot,ebar1_w,ebar2_w,k1,k2[,seed]

#ifndef SPECSHARE_SIM_TRACE_HPP_
#define SPECSHARE_SIM_TRACE_HPP_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "specshare/domain.hpp"
#include "specshare/sim/config.hpp"

namespace specshare::sim {

struct TraceRow {
  std::int64_t slot = 0;
  std::array<double, kNumBs> renewable_cap_w{};
  std::array<int, kNumBs> mt_counts{};
  std::optional<std::uint64_t> rng_seed;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view text, const std::string& where) {
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ValidationError(where + ": cannot parse '" + std::string(text) + "'");
  return v;
}

}  // namespace detail

inline std::vector<TraceRow> parse_trace(const std::string& text,
                                         const std::string& name = "trace") {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(name + ": empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const bool has_seed = line == "slot,ebar1_w,ebar2_w,k1,k2,seed";
  if (!has_seed && line != "slot,ebar1_w,ebar2_w,k1,k2")
    throw ValidationError(name + ": header must be slot,ebar1_w,ebar2_w,k1,k2[,seed]");

  std::vector<TraceRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(line_no);
    const auto f = detail::split_csv_line(line);
    if (f.size() != (has_seed ? 6u : 5u))
      throw ValidationError(where + ": expected " + std::to_string(has_seed ? 6 : 5) + " fields");
    TraceRow r;
    r.slot = detail::parse_field<std::int64_t>(f[0], where + " slot");
    for (std::size_t i = 0; i < kNumBs; ++i) {
      const std::string col = " ebar" + std::to_string(i + 1) + "_w";
      r.renewable_cap_w[i] = detail::parse_field<double>(f[1 + i], where + col);
      if (!(r.renewable_cap_w[i] >= 0.0) || !std::isfinite(r.renewable_cap_w[i]))
        throw ValidationError(where + col + ": must be finite and >= 0");
      const std::string kcol = " k" + std::to_string(i + 1);
      r.mt_counts[i] = detail::parse_field<int>(f[3 + i], where + kcol);
      if (r.mt_counts[i] < 1) throw ValidationError(where + kcol + ": must be >= 1");
    }
    if (has_seed) r.rng_seed = detail::parse_field<std::uint64_t>(f[5], where + " seed");
    if (!rows.empty() && r.slot <= rows.back().slot)
      throw ValidationError(where + ": slot indices must be strictly increasing");
    rows.push_back(r);
  }
  if (rows.empty()) throw ValidationError(name + ": no rows");
  return rows;
}

inline std::vector<TraceRow> load_trace(const std::string& path) {
  return parse_trace(read_file(path), path);
}

// The scenario of one slot: the base scenario with that slot's caps and MTs.
// Generated configs redraw MTs with the slot's seed; explicit MT lists are
// kept and must match the slot's counts.
inline Scenario slot_scenario(const ScenarioConfig& config, const Scenario& base,
                              const TraceRow& row) {
  Scenario s = base;
  for (std::size_t i = 0; i < kNumBs; ++i) s.bs[i].renewable_cap_w = row.renewable_cap_w[i];
  if (config.generation) {
    const std::uint64_t seed =
        row.rng_seed ? *row.rng_seed
                     : slot_seed(config.generation->rng_seed, static_cast<std::uint64_t>(row.slot));
    s.mts = generate_mts(*config.generation, row.mt_counts, seed);
  } else {
    for (std::size_t i = 0; i < kNumBs; ++i)
      if (static_cast<int>(s.mts[i].size()) != row.mt_counts[i])
        throw ValidationError("trace slot " + std::to_string(row.slot) + ": k" +
                              std::to_string(i + 1) +
                              " differs from the config's explicit MT list");
  }
  return s;
}

}  // namespace specshare::sim

#endif  // SPECSHARE_SIM_TRACE_HPP_
