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

// Time-slotted simulation over a trace. Slots are independent and may run
// on several threads; results are stored by slot index, so the output does
// not depend on the thread count.

#ifndef SPECSHARE_SIM_SIMULATE_HPP_
#define SPECSHARE_SIM_SIMULATE_HPP_

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "specshare/domain.hpp"
#include "specshare/full_coop.hpp"
#include "specshare/intra_solver.hpp"
#include "specshare/partial_coop.hpp"
#include "specshare/sim/config.hpp"
#include "specshare/sim/csv.hpp"
#include "specshare/sim/trace.hpp"

namespace specshare::sim {

enum class Mode { kNone, kPartial, kFull };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::kNone: return "none";
    case Mode::kPartial: return "partial";
    case Mode::kFull: return "full";
  }
  return "none";
}

struct SimulationParams {
  std::array<double, kNumBs> gamma{1.0, 1.0};
  Algorithm1Options partial;
  FullCoopOptions full;
  int threads = 1;
  bool verify = false;
};

struct SlotOutcome {
  std::int64_t slot = 0;
  Mode mode = Mode::kNone;
  bool ok = false;
  std::string error;
  std::string detail;  // termination reason for partial rows
  CostTuple costs;
  ExchangeVector x;
};

// Re-solves both BSs at x and checks the reported costs and the optimality
// residuals of each per-BS allocation. Returns an empty string when clean.
inline std::string verify_point(const Scenario& s, const ExchangeVector& x,
                                const CostTuple& reported, double tol = 1e-7) {
  for (std::size_t i = 0; i < kNumBs; ++i) {
    const IntraResult r = solve_intra(i, s, x);
    const IntraResiduals res = intra_residuals(r, s.bs[i], s.mts[i], s.noise_psd);
    if (!res.ok(tol)) return "bs" + std::to_string(i + 1) + " residuals exceed tolerance";
    if (std::fabs(r.cost - reported[i]) > tol * std::max(1.0, r.cost))
      return "bs" + std::to_string(i + 1) + " cost does not match its allocation";
  }
  return {};
}

inline SlotOutcome run_mode(const Scenario& s, Mode mode, const SimulationParams& p) {
  SlotOutcome o;
  o.mode = mode;
  switch (mode) {
    case Mode::kNone: {
      const auto b = solve_benchmark(s);
      o.costs = {b.first.cost, b.second.cost};
      break;
    }
    case Mode::kPartial: {
      const Trajectory t = run_algorithm1(s, p.partial);
      o.costs = t.points.back().costs;
      o.x = t.points.back().x;
      o.detail = std::string(to_string(t.reason));
      break;
    }
    case Mode::kFull: {
      const FullCoopResult r = solve_weighted_sum(s, p.gamma, p.full);
      o.costs = r.costs;
      o.x = r.x_ex;
      break;
    }
  }
  o.ok = true;
  if (p.verify) {
    o.error = verify_point(s, o.x, o.costs);
    o.ok = o.error.empty();
  }
  return o;
}

struct SimulationReport {
  std::vector<Mode> modes;
  // Row-major: slot, then modes in the order above.
  std::vector<SlotOutcome> rows;
  int failures = 0;

  double total(Mode m) const {
    double t = 0.0;
    for (const auto& r : rows)
      if (r.mode == m && r.ok) t += r.costs.sum();
    return t;
  }
  bool has(Mode m) const { return std::find(modes.begin(), modes.end(), m) != modes.end(); }

  // Percentage reduction of the total cost relative to no cooperation.
  double reduction_percent(Mode m) const {
    const double none = total(Mode::kNone);
    return none > 0.0 ? 100.0 * (none - total(m)) / none : 0.0;
  }

  // full <= partial <= none on the totals, each with relative slack.
  bool ordering_holds(double slack = 1e-7) const {
    const double none = total(Mode::kNone);
    const double partial = has(Mode::kPartial) ? total(Mode::kPartial) : none;
    const double full = has(Mode::kFull) ? total(Mode::kFull) : partial;
    const double tol = slack * std::max(1.0, none);
    return full <= partial + tol && partial <= none + tol;
  }
};

// Runs the requested modes on every slot. Mode none always runs since it is
// the reference for the reductions.
inline SimulationReport simulate_trace(const ScenarioConfig& config,
                                       const std::vector<TraceRow>& trace,
                                       std::vector<Mode> modes,
                                       const SimulationParams& params) {
  if (std::find(modes.begin(), modes.end(), Mode::kNone) == modes.end())
    modes.insert(modes.begin(), Mode::kNone);
  std::sort(modes.begin(), modes.end());
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());

  SimulationReport rep;
  rep.modes = modes;
  const std::size_t per_slot = modes.size();
  rep.rows.resize(trace.size() * per_slot);

  // Base scenario without MTs when they are generated per slot.
  ScenarioConfig base_config = config;
  if (base_config.generation) {
    for (auto& b : base_config.base_stations) b.mts.reset();
  }
  const Scenario base = to_scenario(base_config);

  auto run_slot = [&](std::size_t idx) {
    const TraceRow& row = trace[idx];
    Scenario s;
    std::string setup_error;
    try {
      s = slot_scenario(config, base, row);
      s.validate();
    } catch (const std::exception& e) {
      setup_error = e.what();
    }
    for (std::size_t m = 0; m < per_slot; ++m) {
      SlotOutcome& out = rep.rows[idx * per_slot + m];
      if (!setup_error.empty()) {
        out.mode = modes[m];
        out.error = setup_error;
      } else {
        try {
          out = run_mode(s, modes[m], params);
        } catch (const std::exception& e) {
          out = {};
          out.mode = modes[m];
          out.error = e.what();
        }
      }
      out.slot = row.slot;
    }
  };

  const int threads =
      std::max(1, std::min<int>(params.threads, static_cast<int>(trace.size())));
  if (threads == 1) {
    for (std::size_t k = 0; k < trace.size(); ++k) run_slot(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < trace.size(); k = next++) run_slot(k);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& r : rep.rows)
    if (!r.ok) ++rep.failures;
  return rep;
}

inline std::string simulation_csv(const SimulationReport& rep) {
  CsvWriter w({"slot", "mode", "status", "c1", "c2", "total", "e1", "e2", "w1", "w2", "detail"});
  for (const auto& r : rep.rows) {
    w.add(static_cast<long long>(r.slot)).add(to_string(r.mode));
    if (r.ok) {
      w.add("ok").add(r.costs.c1).add(r.costs.c2).add(r.costs.sum());
      w.add(r.x.e1).add(r.x.e2).add(r.x.w1).add(r.x.w2).add(r.detail);
    } else {
      w.add("error");
      for (int k = 0; k < 7; ++k) w.add("");
      w.add(r.error);
    }
    w.end_row();
  }
  return w.str();
}

inline std::string format_percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string simulation_summary(const SimulationReport& rep) {
  std::string out;
  const std::size_t slots = rep.modes.empty() ? 0 : rep.rows.size() / rep.modes.size();
  out += "slots: " + std::to_string(slots) + ", failed rows: " + std::to_string(rep.failures) + "\n";
  for (Mode m : rep.modes)
    out += "total cost " + std::string(to_string(m)) + ": " + format_double(rep.total(m)) + "\n";
  std::vector<std::string> parts;
  for (Mode m : {Mode::kFull, Mode::kPartial})
    if (rep.has(m))
      parts.push_back(std::string(to_string(m)) + " " + format_percent(rep.reduction_percent(m)) + "%");
  if (!parts.empty()) {
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? ", " : "") + parts[k];
    out += " total cost reduction\n";
  }
  out += std::string("ordering full <= partial <= none: ") +
         (rep.ordering_holds() ? "holds" : "VIOLATED") + "\n";
  return out;
}

}  // namespace specshare::sim

#endif  // SPECSHARE_SIM_SIMULATE_HPP_
