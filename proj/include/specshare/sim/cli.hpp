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

// Command-line front end. Kept in a header so tests can drive it in-process.
//
// CSV goes to --output when given, otherwise to standard output; the human
// summary goes to standard output, or to standard error when the CSV
// occupies standard output.

#ifndef SPECSHARE_SIM_CLI_HPP_
#define SPECSHARE_SIM_CLI_HPP_

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specshare/full_coop.hpp"
#include "specshare/intra_solver.hpp"
#include "specshare/partial_coop.hpp"
#include "specshare/sim/config.hpp"
#include "specshare/sim/csv.hpp"
#include "specshare/sim/simulate.hpp"
#include "specshare/sim/trace.hpp"

namespace specshare::sim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitUsage = 64;

namespace detail {

struct CliState {
  std::string config;
  std::string output;
  bool verify = false;
  std::string method = "ellipsoid";
  double gamma1 = 0.5;
  std::optional<double> gamma2;
  double delta = 0.05;
  std::optional<double> rho;
  bool proportional = false;
  int max_iters = 1000;
  int points = 11;
  std::string trace;
  std::string mode = "all";
  std::optional<int> threads;
};

class Emitter {
 public:
  Emitter(const CliState& st, std::ostream& out, std::ostream& err)
      : path_(st.output), out_(out), summary_(st.output.empty() ? err : out) {}

  std::ostream& summary() { return summary_; }

  void csv(const std::string& text) {
    if (path_.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(path_, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError(path_ + ": cannot open for writing");
    f << text;
    if (!f) throw ValidationError(path_ + ": write failed");
  }

 private:
  std::string path_;
  std::ostream& out_;
  std::ostream& summary_;
};

inline FullCoopOptions full_options(const CliState& st) {
  FullCoopOptions opt;
  if (st.method == "subgradient") {
    opt.method = DualMethod::kSubgradient;
    opt.gap_tol = 1e-4;
  }
  return opt;
}

inline Algorithm1Options partial_options(const CliState& st) {
  Algorithm1Options opt;
  opt.delta = st.delta;
  opt.max_iters = st.max_iters;
  if (st.rho && st.proportional)
    throw ValidationError("--rho and --proportional are mutually exclusive");
  opt.rho = st.rho;
  return opt;
}

inline std::array<double, kNumBs> gammas(const CliState& st) {
  return {st.gamma1, st.gamma2.value_or(1.0 - st.gamma1)};
}

inline void verify_or_throw(const Scenario& s, const ExchangeVector& x, const CostTuple& c,
                            const std::string& what) {
  const std::string problem = verify_point(s, x, c);
  if (!problem.empty()) throw InfeasibleError("verify failed for " + what + ": " + problem);
}

inline int run_benchmark(const CliState& st, Emitter& em) {
  const Scenario s = to_scenario(load_config(st.config));
  const auto b = solve_benchmark(s);
  CsvWriter w({"bs", "cost", "renewable_w", "grid_w", "load_w", "bandwidth_hz", "tx_power_w",
               "mu", "lambda", "nu"});
  int i = 1;
  for (const IntraResult* r : {&b.first, &b.second}) {
    w.add(i++).add(r->cost).add(r->alloc.renewable_w).add(r->alloc.grid_w);
    w.add(r->effective_load).add(r->effective_bandwidth).add(r->alloc.total_power());
    w.add(r->duals.mu).add(r->duals.lambda).add(r->duals.nu);
    w.end_row();
  }
  if (st.verify) verify_or_throw(s, {}, {b.first.cost, b.second.cost}, "benchmark");
  em.csv(w.str());
  em.summary() << "benchmark costs: c1 = " << format_double(b.first.cost)
               << ", c2 = " << format_double(b.second.cost) << "\n";
  return kExitOk;
}

inline int run_full(const CliState& st, Emitter& em) {
  const Scenario s = to_scenario(load_config(st.config));
  const auto g = gammas(st);
  const FullCoopResult r = solve_weighted_sum(s, g, full_options(st));
  if (st.verify) verify_or_throw(s, r.x_ex, r.costs, "full");
  CsvWriter w({"gamma1", "gamma2", "c1", "c2", "e1", "e2", "w1", "w2", "weighted_sum",
               "dual_value", "iterations"});
  w.add(g[0]).add(g[1]).add(r.costs.c1).add(r.costs.c2);
  w.add(r.x_ex.e1).add(r.x_ex.e2).add(r.x_ex.w1).add(r.x_ex.w2);
  w.add(r.weighted_sum).add(r.dual_value).add(r.iterations);
  w.end_row();
  em.csv(w.str());
  em.summary() << "full cooperation: c1 = " << format_double(r.costs.c1)
               << ", c2 = " << format_double(r.costs.c2)
               << ", weighted sum = " << format_double(r.weighted_sum)
               << ", duality gap = " << format_double(r.duality_gap) << "\n";
  return kExitOk;
}

inline int run_partial(const CliState& st, Emitter& em) {
  const Scenario s = to_scenario(load_config(st.config));
  const Trajectory t = run_algorithm1(s, partial_options(st));
  if (st.verify)
    for (const auto& p : t.points) verify_or_throw(s, p.x, p.costs, "trajectory point");
  CsvWriter w({"iter", "e1", "e2", "w1", "w2", "c1", "c2", "sigma", "status"});
  for (std::size_t k = 0; k < t.points.size(); ++k) {
    const auto& p = t.points[k];
    w.add(static_cast<long long>(k)).add(p.x.e1).add(p.x.e2).add(p.x.w1).add(p.x.w2);
    w.add(p.costs.c1).add(p.costs.c2).add(p.sigma);
    w.add(k + 1 == t.points.size() ? to_string(t.reason) : std::string_view("running"));
    w.end_row();
  }
  em.csv(w.str());
  const auto& a = t.points.front().costs;
  const auto& b = t.points.back().costs;
  em.summary() << "partial cooperation: " << to_string(t.reason) << " after "
               << t.points.size() - 1 << " steps, rho = " << format_double(t.rho) << "\n"
               << "costs: c1 " << format_double(a.c1) << " -> " << format_double(b.c1)
               << ", c2 " << format_double(a.c2) << " -> " << format_double(b.c2) << "\n";
  if (t.points.size() > 1)
    em.summary() << "cost reduction ratio: " << format_double(t.reduction_ratio()) << "\n";
  return kExitOk;
}

inline int run_pareto(const CliState& st, Emitter& em) {
  const Scenario s = to_scenario(load_config(st.config));
  const auto pts = pareto_sweep(s, st.points, full_options(st));
  CsvWriter w({"gamma1", "gamma2", "c1", "c2", "e1", "e2", "w1", "w2"});
  for (const auto& p : pts) {
    if (st.verify) verify_or_throw(s, p.x_ex, p.costs, "pareto point");
    w.add(p.gamma[0]).add(p.gamma[1]).add(p.costs.c1).add(p.costs.c2);
    w.add(p.x_ex.e1).add(p.x_ex.e2).add(p.x_ex.w1).add(p.x_ex.w2);
    w.end_row();
  }
  em.csv(w.str());
  em.summary() << "pareto sweep: " << pts.size() << " points\n";
  return kExitOk;
}

inline int thread_count(const CliState& st) {
  if (st.threads) return std::max(1, *st.threads);
  if (const char* env = std::getenv("SPECSHARE_THREADS")) {
    int n = 0;
    const std::string_view v(env);
    const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size() || n < 1)
      throw ValidationError("SPECSHARE_THREADS must be a positive integer");
    return n;
  }
  return 1;
}

inline int run_simulate(const CliState& st, Emitter& em) {
  const ScenarioConfig config = load_config(st.config);
  const auto trace = load_trace(st.trace);
  std::vector<Mode> modes;
  if (st.mode == "none") modes = {Mode::kNone};
  else if (st.mode == "partial") modes = {Mode::kPartial};
  else if (st.mode == "full") modes = {Mode::kFull};
  else modes = {Mode::kNone, Mode::kPartial, Mode::kFull};

  SimulationParams p;
  if (st.gamma2 || st.gamma1 != 0.5) p.gamma = gammas(st);
  p.partial = partial_options(st);
  p.full = full_options(st);
  p.threads = thread_count(st);
  p.verify = st.verify;
  const SimulationReport rep = simulate_trace(config, trace, modes, p);
  em.csv(simulation_csv(rep));
  em.summary() << simulation_summary(rep);
  return rep.failures > 0 ? kExitSolver : kExitOk;
}

inline int run_check(const CliState& st, std::ostream& o) {
  const Scenario s = to_scenario(load_config(st.config));
  const auto b = solve_benchmark(s);
  const std::array<DualPrices, kNumBs> d = {b.first.duals, b.second.duals};
  const Branch br = improvement_conditions(d, {}, s.energy_coop_beta);
  switch (br) {
    case Branch::kShareE1ForW2:
      o << "partial cooperation FEASIBLE: λ1/μ1 > λ2/(μ2·βE)\n"
        << "BS1 shares energy, BS2 shares spectrum\n";
      break;
    case Branch::kShareE2ForW1:
      o << "partial cooperation FEASIBLE: λ2/μ2 > λ1/(μ1·βE)\n"
        << "BS2 shares energy, BS1 shares spectrum\n";
      break;
    case Branch::kNone:
      o << "partial cooperation INFEASIBLE: λ1/μ1 <= λ2/(μ2·βE) and λ2/μ2 <= λ1/(μ1·βE)\n";
      break;
  }
  o << "mu1 = " << format_double(d[0].mu) << " per W, lambda1 = " << format_double(d[0].lambda)
    << " per Hz\n"
    << "mu2 = " << format_double(d[1].mu) << " per W, lambda2 = " << format_double(d[1].lambda)
    << " per Hz\n"
    << "beta_E = " << format_double(s.energy_coop_beta) << "\n";
  return kExitOk;
}

}  // namespace detail

// Runs one subcommand. Exit codes: 0 success, 1 invalid input, 2 solver
// failure, 64 usage error.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  detail::CliState st;
  CLI::App app{"Energy and spectrum cooperation between two base stations"};
  app.name("specshare");
  app.require_subcommand(1);

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("config", st.config, "Scenario JSON file")->required();
    sub->add_option("-o,--output", st.output, "Write the CSV here instead of stdout");
    sub->add_flag("--verify", st.verify, "Re-check optimality residuals of every emitted point");
  };
  auto add_method = [&](CLI::App* sub) {
    sub->add_option("--method", st.method, "Dual search: ellipsoid or subgradient")
        ->check(CLI::IsMember({"ellipsoid", "subgradient"}));
  };
  auto add_partial = [&](CLI::App* sub, bool delta_required) {
    auto* d = sub->add_option("--delta", st.delta, "Step size")->check(CLI::PositiveNumber);
    if (delta_required) d->required();
    auto* r = sub->add_option("--rho", st.rho, "Cost reduction ratio C1:C2")
                  ->check(CLI::PositiveNumber);
    auto* p = sub->add_flag("--proportional", st.proportional,
                            "rho = ratio of the non-cooperative costs (default)");
    r->excludes(p);
    sub->add_option("--max-iters", st.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  };
  auto add_gamma = [&](CLI::App* sub) {
    sub->add_option("--gamma1", st.gamma1, "Weight of BS 1")->check(CLI::Range(0.0, 1e300));
    sub->add_option("--gamma2", st.gamma2, "Weight of BS 2 (default 1 - gamma1)")
        ->check(CLI::Range(0.0, 1e300));
  };

  auto* bench = app.add_subcommand("benchmark", "Non-cooperative optimum of both BSs");
  add_config(bench);
  auto* full = app.add_subcommand("full", "Full cooperation at one weight pair");
  add_config(full);
  add_gamma(full);
  add_method(full);
  auto* partial = app.add_subcommand("partial", "Distributed partial cooperation");
  add_config(partial);
  add_partial(partial, true);
  auto* pareto = app.add_subcommand("pareto", "Pareto boundary by a weight sweep");
  add_config(pareto);
  add_method(pareto);
  pareto->add_option("--points", st.points, "Number of weight pairs")
      ->required()
      ->check(CLI::Range(2, 100000));
  auto* simulate = app.add_subcommand("simulate", "Time-slotted simulation over a trace");
  add_config(simulate);
  add_partial(simulate, false);
  add_gamma(simulate);
  add_method(simulate);
  simulate->add_option("--trace", st.trace, "Trace CSV")->required();
  simulate->add_option("--mode", st.mode, "none, partial, full or all")
      ->check(CLI::IsMember({"none", "partial", "full", "all"}));
  simulate->add_option("--threads", st.threads, "Slot parallelism (overrides SPECSHARE_THREADS)")
      ->check(CLI::PositiveNumber);
  auto* check = app.add_subcommand("check", "Whether partial cooperation can help both BSs");
  check->add_option("config", st.config, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  detail::Emitter em(st, out, err);
  try {
    if (bench->parsed()) return detail::run_benchmark(st, em);
    if (full->parsed()) return detail::run_full(st, em);
    if (partial->parsed()) return detail::run_partial(st, em);
    if (pareto->parsed()) return detail::run_pareto(st, em);
    if (simulate->parsed()) return detail::run_simulate(st, em);
    if (check->parsed()) return detail::run_check(st, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}

}  // namespace specshare::sim

#endif  // SPECSHARE_SIM_CLI_HPP_
