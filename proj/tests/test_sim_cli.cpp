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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "specshare/sim/cli.hpp"

namespace specshare::sim {
namespace {

const std::string kSource = SPECSHARE_SOURCE_DIR;

std::string config_path(const std::string& name) { return kSource + "/configs/" + name; }
std::string golden_path(const std::string& name) { return kSource + "/tests/golden/" + name; }

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "specshare");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  for (auto f : detail::split_csv_line(line)) out.emplace_back(f);
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "specshare_tests";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

// CSV text against a golden file: same shape, same text fields, numbers
// within a relative tolerance.
void expect_matches_golden(const std::string& csv, const std::string& golden) {
  const auto got = lines(csv);
  const auto want = lines(read_file(golden_path(golden)));
  ASSERT_EQ(got.size(), want.size()) << golden;
  for (std::size_t r = 0; r < got.size(); ++r) {
    const auto a = fields(got[r]);
    const auto b = fields(want[r]);
    ASSERT_EQ(a.size(), b.size()) << golden << " row " << r;
    for (std::size_t c = 0; c < a.size(); ++c) {
      char* end_a = nullptr;
      char* end_b = nullptr;
      const double x = std::strtod(a[c].c_str(), &end_a);
      const double y = std::strtod(b[c].c_str(), &end_b);
      const bool numeric = !a[c].empty() && *end_a == '\0' && !b[c].empty() && *end_b == '\0';
      if (numeric) {
        EXPECT_NEAR(x, y, 1e-9 * std::max(1.0, std::fabs(y)))
            << golden << " row " << r << " col " << c;
      } else {
        EXPECT_EQ(a[c], b[c]) << golden << " row " << r << " col " << c;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Configs

TEST(Config, ShippedConfigsRoundTrip) {
  for (const char* name : {"desk_golden.json", "infeasible_boundary.json", "standard_setup.json",
                           "dense_setup.json"}) {
    const ScenarioConfig c = load_config(config_path(name));
    const std::string text = serialize_config(c);
    const ScenarioConfig back = parse_config(text);
    EXPECT_EQ(back, c) << name;
    EXPECT_EQ(serialize_config(back), text) << name;
    EXPECT_NO_THROW(to_scenario(c)) << name;
  }
}

TEST(Config, UnitsAreConverted) {
  const Scenario s = to_scenario(load_config(config_path("desk_golden.json")));
  EXPECT_NEAR(s.noise_psd, std::pow(10.0, -20.4), 1e-35);
  EXPECT_EQ(s.bs[0].bandwidth_hz, 5e6);
  EXPECT_NEAR(s.mts[0][0].gain, 1e-12, 1e-27);
  EXPECT_EQ(s.bs[0].pa_efficiency, 1.0);
}

std::string desk_text() { return read_file(config_path("desk_golden.json")); }

TEST(Config, UnknownFieldIsRejectedWithPath) {
  auto j = nlohmann::json::parse(desk_text());
  j["base_stations"][1]["bandwidth_hz"] = 5;
  try {
    parse_config(j.dump());
    FAIL() << "accepted an unknown field";
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("config.base_stations[1]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("bandwidth_hz"), std::string::npos) << msg;
  }
}

TEST(Config, MissingAndMistypedFieldsNameTheirPath) {
  auto j = nlohmann::json::parse(desk_text());
  j["base_stations"][0].erase("nontx_power_w");
  try {
    parse_config(j.dump());
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("config.base_stations[0].nontx_power_w"),
              std::string::npos)
        << e.what();
  }
  auto k = nlohmann::json::parse(desk_text());
  k["base_stations"][0]["mts"][1]["rate_bps"] = "fast";
  try {
    parse_config(k.dump());
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("config.base_stations[0].mts[1].rate_bps"),
              std::string::npos)
        << e.what();
  }
  EXPECT_THROW(parse_config("{not json"), ValidationError);
}

TEST(Config, MtSourceMustBeUnambiguous) {
  ScenarioConfig c = load_config(config_path("standard_setup.json"));
  ASSERT_TRUE(c.generation.has_value());
  ScenarioConfig both = c;
  both.base_stations[0].mts = std::vector<MtConfig>{{-100.0, 1e6}};
  EXPECT_THROW(to_scenario(both), ValidationError);
  ScenarioConfig neither = c;
  neither.generation.reset();
  EXPECT_THROW(to_scenario(neither), ValidationError);
}

TEST(Config, SeedIsMandatoryWhenGenerating) {
  auto j = nlohmann::json::parse(read_file(config_path("standard_setup.json")));
  j["generation"].erase("rng_seed");
  EXPECT_THROW(parse_config(j.dump()), ValidationError);
}

TEST(Config, InvalidValuesAreRejected) {
  ScenarioConfig c = load_config(config_path("desk_golden.json"));
  c.base_stations[1].price_renewable_per_w = 2.0;  // above the grid price
  EXPECT_THROW(to_scenario(c), ValidationError);
  c = load_config(config_path("desk_golden.json"));
  c.energy_coop_beta = 1.5;
  EXPECT_THROW(to_scenario(c), ValidationError);
}

// ---------------------------------------------------------------------------
// MT generation

TEST(Generation, PathlossAtReferenceAndTenfoldDistance) {
  const PathlossConfig pl{-60.0, 10.0, 3.0};
  EXPECT_NEAR(pathloss_gain(pl, 10.0), 1e-6, 1e-21);
  EXPECT_NEAR(pathloss_gain(pl, 100.0), 1e-9, 1e-24);
}

TEST(Generation, SameSeedSameGains) {
  const ScenarioConfig c = load_config(config_path("standard_setup.json"));
  const auto a = generate_mts(c);
  const auto b = generate_mts(c);
  for (int i = 0; i < 2; ++i) {
    ASSERT_EQ(a[i].size(), static_cast<std::size_t>(c.generation->mt_counts[i]));
    for (std::size_t k = 0; k < a[i].size(); ++k) {
      EXPECT_EQ(a[i][k].gain, b[i][k].gain);
      EXPECT_EQ(a[i][k].rate_bps, c.generation->rate_bps[i]);
    }
  }
  ScenarioConfig other = c;
  other.generation->rng_seed += 1;
  EXPECT_NE(generate_mts(other)[0][0].gain, a[0][0].gain);
}

TEST(Generation, GainsStayWithinTheAnnulus) {
  GenerationConfig g{500.0, std::nullopt, {-60.0, 10.0, 3.0}, {200, 200}, {1e6, 1e6}, 3};
  const auto mts = generate_mts(g, g.mt_counts, g.rng_seed);
  const double gmax = pathloss_gain(g.pathloss, 10.0);
  const double gmin = pathloss_gain(g.pathloss, 500.0);
  for (const auto& bs : mts)
    for (const auto& m : bs) {
      EXPECT_LE(m.gain, gmax);
      EXPECT_GE(m.gain, gmin);
    }
}

// Uniform over the area: the share of MTs inside radius r is the share of
// the annulus area inside r.
TEST(Generation, PlacementIsUniformOverTheArea) {
  GenerationConfig g{500.0, 10.0, {-60.0, 10.0, 3.0}, {20000, 1}, {1e6, 1e6}, 17};
  const auto mts = generate_mts(g, g.mt_counts, g.rng_seed);
  const double r = 250.0;
  const double g_at_r = pathloss_gain(g.pathloss, r);
  int inside = 0;
  for (const auto& m : mts[0])
    if (m.gain >= g_at_r) ++inside;
  const double expected = (r * r - 100.0) / (500.0 * 500.0 - 100.0);
  const double share = static_cast<double>(inside) / 20000.0;
  EXPECT_NEAR(share, expected, 4.0 * std::sqrt(expected * (1 - expected) / 20000.0));
}

TEST(Generation, InvalidBlockIsRejected) {
  GenerationConfig g{5.0, std::nullopt, {-60.0, 10.0, 3.0}, {2, 2}, {1e6, 1e6}, 3};
  EXPECT_THROW(generate_mts(g, g.mt_counts, 1), ValidationError);  // radius inside d0
  g.cell_radius_m = 100.0;
  EXPECT_THROW(generate_mts(g, {0, 2}, 1), ValidationError);
}

TEST(Generation, SlotSeedsDiffer) {
  EXPECT_NE(slot_seed(7, 0), slot_seed(7, 1));
  EXPECT_EQ(slot_seed(7, 5), slot_seed(7, 5));
  EXPECT_NE(slot_seed(7, 5), slot_seed(8, 5));
}

// ---------------------------------------------------------------------------
// Traces

TEST(Trace, ParsesWithAndWithoutSeed) {
  const auto a = parse_trace("slot,ebar1_w,ebar2_w,k1,k2\n0,10,20,1,2\n3,0,5.5,4,1\n");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[1].slot, 3);
  EXPECT_EQ(a[1].renewable_cap_w[1], 5.5);
  EXPECT_EQ(a[1].mt_counts[0], 4);
  EXPECT_FALSE(a[0].rng_seed.has_value());
  const auto b = parse_trace("slot,ebar1_w,ebar2_w,k1,k2,seed\r\n1,1,1,1,1,99\r\n");
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].rng_seed, 99u);
}

TEST(Trace, RejectsBadRows) {
  const std::string h = "slot,ebar1_w,ebar2_w,k1,k2\n";
  EXPECT_THROW(parse_trace(""), ValidationError);
  EXPECT_THROW(parse_trace("slot,e1,e2,k1,k2\n0,1,1,1,1\n"), ValidationError);
  EXPECT_THROW(parse_trace(h), ValidationError);
  EXPECT_THROW(parse_trace(h + "0,1,1,1,1\n0,1,1,1,1\n"), ValidationError);
  EXPECT_THROW(parse_trace(h + "1,1,1,1,1\n0,1,1,1,1\n"), ValidationError);
  EXPECT_THROW(parse_trace(h + "0,-1,1,1,1\n"), ValidationError);
  EXPECT_THROW(parse_trace(h + "0,1,1,0,1\n"), ValidationError);
  EXPECT_THROW(parse_trace(h + "0,1,x,1,1\n"), ValidationError);
  EXPECT_THROW(parse_trace(h + "0,1,1,1\n"), ValidationError);
  try {
    parse_trace(h + "0,1,1,1,1\n1,1,1,1,-2\n", "day.csv");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("day.csv:3 k2"), std::string::npos) << e.what();
  }
}

TEST(Trace, ShippedTraceIsValid) {
  const auto t = load_trace(kSource + "/traces/day24.csv");
  EXPECT_EQ(t.size(), 24u);
}

TEST(Trace, DenseTraceDrawsItsOwnMts) {
  const ScenarioConfig c = load_config(config_path("dense_setup.json"));
  const auto t = load_trace(kSource + "/traces/day24_dense.csv");
  ASSERT_EQ(t.size(), 24u);
  const Scenario base = to_scenario(c);
  for (const auto& row : t) {
    ASSERT_TRUE(row.rng_seed.has_value());
    for (int i = 0; i < 2; ++i) {
      EXPECT_GE(row.mt_counts[i], 40);
      EXPECT_LE(row.mt_counts[i], 60);
    }
  }
  const Scenario s = slot_scenario(c, base, t[3]);
  EXPECT_EQ(static_cast<int>(s.mts[0].size()), t[3].mt_counts[0]);
  EXPECT_EQ(static_cast<int>(s.mts[1].size()), t[3].mt_counts[1]);
  const auto again = generate_mts(*c.generation, t[3].mt_counts, *t[3].rng_seed);
  EXPECT_EQ(again[1].back().gain, s.mts[1].back().gain);
}

TEST(Trace, ExplicitMtsMustMatchCounts) {
  const ScenarioConfig c = load_config(config_path("desk_golden.json"));
  const Scenario base = to_scenario(c);
  TraceRow row{0, {1.0, 2.0}, {2, 2}, std::nullopt};
  const Scenario s = slot_scenario(c, base, row);
  EXPECT_EQ(s.bs[0].renewable_cap_w, 1.0);
  EXPECT_EQ(s.bs[1].renewable_cap_w, 2.0);
  row.mt_counts = {3, 2};
  EXPECT_THROW(slot_scenario(c, base, row), ValidationError);
}

// ---------------------------------------------------------------------------
// CSV

TEST(Csv, ShortestRoundTripFormatting) {
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.5e7), "1.5e+07");
  EXPECT_EQ(format_double(250.0), "250");
  for (double v : {1.0 / 3.0, 6.02214076e23, 1e-300, -2.5e-7, 4.146838583499249}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
}

TEST(Csv, QuotesOnlyWhenNeeded) {
  CsvWriter w({"a", "b"});
  w.add("plain").add("with,comma");
  w.end_row();
  w.add("say \"hi\"").add(3);
  w.end_row();
  EXPECT_EQ(w.str(), "a,b\nplain,\"with,comma\"\n\"say \"\"hi\"\"\",3\n");
}

TEST(Csv, PercentHasTwoDecimals) {
  EXPECT_EQ(format_percent(55.678), "55.68");
  EXPECT_EQ(format_percent(0.0), "0.00");
}

// ---------------------------------------------------------------------------
// Simulation

TEST(Simulate, ConstantTraceMatchesOneShotSolvers) {
  const ScenarioConfig c = load_config(config_path("desk_golden.json"));
  const Scenario s = to_scenario(c);
  std::vector<TraceRow> trace;
  for (int k = 0; k < 3; ++k)
    trace.push_back({k, {s.bs[0].renewable_cap_w, s.bs[1].renewable_cap_w}, {2, 2}, std::nullopt});
  SimulationParams p;
  const auto rep = simulate_trace(c, trace, {Mode::kPartial, Mode::kFull}, p);
  ASSERT_EQ(rep.rows.size(), 9u);
  EXPECT_EQ(rep.failures, 0);
  const auto bench = solve_benchmark(s);
  const Trajectory t = run_algorithm1(s, p.partial);
  const FullCoopResult f = solve_weighted_sum(s, p.gamma, p.full);
  for (int k = 0; k < 3; ++k) {
    const auto& none = rep.rows[3 * k];
    const auto& partial = rep.rows[3 * k + 1];
    const auto& full = rep.rows[3 * k + 2];
    EXPECT_EQ(none.mode, Mode::kNone);
    EXPECT_EQ(none.costs.c1, bench.first.cost);
    EXPECT_EQ(partial.costs.c2, t.points.back().costs.c2);
    EXPECT_EQ(partial.detail, "converged");
    EXPECT_EQ(full.costs.c1, f.costs.c1);
    EXPECT_EQ(full.x, f.x_ex);
  }
  EXPECT_TRUE(rep.ordering_holds());
}

TEST(Simulate, OrderingHoldsOnTheShippedTrace) {
  const ScenarioConfig c = load_config(config_path("standard_setup.json"));
  const auto trace = load_trace(kSource + "/traces/day24.csv");
  SimulationParams p;
  p.threads = 4;
  p.verify = true;
  const auto rep = simulate_trace(c, trace, {Mode::kPartial, Mode::kFull}, p);
  EXPECT_EQ(rep.failures, 0);
  EXPECT_TRUE(rep.ordering_holds());
  for (std::size_t k = 0; k < rep.rows.size(); k += 3) {
    const double none = rep.rows[k].costs.sum();
    EXPECT_LE(rep.rows[k + 1].costs.sum(), none + 1e-7 * none);
    EXPECT_LE(rep.rows[k + 2].costs.sum(), rep.rows[k + 1].costs.sum() + 1e-7 * none);
  }
  const std::string summary = simulation_summary(rep);
  EXPECT_NE(summary.find("total cost reduction"), std::string::npos);
  EXPECT_NE(summary.find("full " + format_percent(rep.reduction_percent(Mode::kFull)) +
                         "%, partial " + format_percent(rep.reduction_percent(Mode::kPartial)) +
                         "%"),
            std::string::npos)
      << summary;
}

TEST(Simulate, ThreadCountDoesNotChangeOutput) {
  const ScenarioConfig c = load_config(config_path("standard_setup.json"));
  const auto trace = load_trace(kSource + "/traces/day24.csv");
  SimulationParams p;
  const auto one = simulation_csv(simulate_trace(c, trace, {Mode::kPartial, Mode::kFull}, p));
  p.threads = 7;
  const auto many = simulation_csv(simulate_trace(c, trace, {Mode::kPartial, Mode::kFull}, p));
  EXPECT_EQ(one, many);
}

TEST(Simulate, SlotErrorsAreRecordedAndTheRunContinues) {
  const ScenarioConfig c = load_config(config_path("desk_golden.json"));
  const std::vector<TraceRow> trace{{0, {80.0, 10.0}, {2, 2}, std::nullopt},
                                    {1, {80.0, 10.0}, {3, 2}, std::nullopt},
                                    {2, {80.0, 10.0}, {2, 2}, std::nullopt}};
  const auto rep = simulate_trace(c, trace, {Mode::kNone}, {});
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_TRUE(rep.rows[0].ok);
  EXPECT_FALSE(rep.rows[1].ok);
  EXPECT_NE(rep.rows[1].error.find("k1"), std::string::npos);
  EXPECT_TRUE(rep.rows[2].ok);
  EXPECT_EQ(rep.failures, 1);
  const auto csv = lines(simulation_csv(rep));
  EXPECT_EQ(fields(csv[2])[2], "error");
}

// ---------------------------------------------------------------------------
// Command line

TEST(Cli, CheckReportsFeasibleTrade) {
  const auto r = run({"check", config_path("desk_golden.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(lines(r.out).at(0), "partial cooperation FEASIBLE: λ1/μ1 > λ2/(μ2·βE)");
  EXPECT_NE(r.out.find("mu1 = 0.2 per W"), std::string::npos);
  EXPECT_NE(r.out.find("mu2 = 1 per W"), std::string::npos);
  EXPECT_NE(r.out.find("lambda1 = "), std::string::npos);
  EXPECT_NE(r.out.find("lambda2 = "), std::string::npos);
}

TEST(Cli, CheckReportsInfeasibleBoundary) {
  const auto r = run({"check", config_path("infeasible_boundary.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("partial cooperation INFEASIBLE", 0), 0u) << r.out;
}

TEST(Cli, ParetoTwoPoints) {
  const auto r = run({"pareto", config_path("desk_golden.json"), "--points", "2"});
  EXPECT_EQ(r.code, kExitOk);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "gamma1,gamma2,c1,c2,e1,e2,w1,w2");
  EXPECT_NE(r.err.find("pareto sweep: 2 points"), std::string::npos);
}

TEST(Cli, PartialTrajectorySchema) {
  const auto r = run({"partial", config_path("desk_golden.json"), "--delta", "0.05",
                      "--proportional"});
  EXPECT_EQ(r.code, kExitOk);
  const auto l = lines(r.out);
  ASSERT_GT(l.size(), 3u);
  EXPECT_EQ(l[0], "iter,e1,e2,w1,w2,c1,c2,sigma,status");
  EXPECT_EQ(fields(l[1])[8], "running");
  EXPECT_EQ(fields(l.back())[8], "converged");
}

TEST(Cli, OutputsMatchGoldenFiles) {
  const std::string cfg = config_path("desk_golden.json");
  expect_matches_golden(run({"benchmark", cfg}).out, "desk_benchmark.csv");
  expect_matches_golden(run({"full", cfg, "--gamma1", "0.5"}).out, "desk_full.csv");
  expect_matches_golden(run({"partial", cfg, "--delta", "0.05", "--proportional"}).out,
                        "desk_partial.csv");
  expect_matches_golden(run({"pareto", cfg, "--points", "5"}).out, "desk_pareto.csv");
  expect_matches_golden(run({"simulate", config_path("standard_setup.json"), "--trace",
                             kSource + "/traces/day24.csv", "--mode", "all"})
                            .out,
                        "day24_simulate.csv");
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const std::string cfg = config_path("desk_golden.json");
  const std::vector<std::vector<std::string>> cmds{
      {"benchmark", cfg},
      {"full", cfg, "--gamma1", "0.3"},
      {"partial", cfg, "--delta", "0.02"},
      {"pareto", cfg, "--points", "4"},
      {"check", cfg},
      {"simulate", config_path("standard_setup.json"), "--trace", kSource + "/traces/day24.csv",
       "--mode", "partial", "--threads", "3"}};
  for (const auto& c : cmds) {
    const auto a = run(c);
    const auto b = run(c);
    EXPECT_EQ(a.code, kExitOk) << c[0];
    EXPECT_EQ(a.out, b.out) << c[0];
  }
}

TEST(Cli, OutputFileAndSummary) {
  const auto path = temp_file("bench.csv", "");
  const auto r = run({"benchmark", config_path("desk_golden.json"), "-o", path.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(read_file(path.string()).rfind("bs,cost,", 0), 0u);
  EXPECT_NE(r.out.find("benchmark costs:"), std::string::npos);
}

TEST(Cli, VerifyPassesOnShippedConfigs) {
  const std::string cfg = config_path("desk_golden.json");
  EXPECT_EQ(run({"benchmark", cfg, "--verify"}).code, kExitOk);
  EXPECT_EQ(run({"full", cfg, "--verify"}).code, kExitOk);
  EXPECT_EQ(run({"partial", cfg, "--delta", "0.05", "--verify"}).code, kExitOk);
  EXPECT_EQ(run({"pareto", cfg, "--points", "3", "--verify"}).code, kExitOk);
}

TEST(Cli, ExitCodes) {
  const std::string cfg = config_path("desk_golden.json");
  EXPECT_EQ(run({"benchmark", cfg, "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"pareto", cfg}).code, kExitUsage);
  EXPECT_EQ(run({"partial", cfg, "--delta", "0.05", "--rho", "1", "--proportional"}).code,
            kExitUsage);
  EXPECT_EQ(run({"benchmark", kSource + "/configs/missing.json"}).code, kExitValidation);
  const auto bad = temp_file("bad.json", "{\"noise_psd_dbm_per_hz\": -174}");
  const auto r = run({"benchmark", bad.string()});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("config."), std::string::npos) << r.err;
  // A slot whose MT count disagrees with the explicit lists fails that slot.
  const auto trace = temp_file("mismatch.csv", "slot,ebar1_w,ebar2_w,k1,k2\n0,80,10,2,2\n1,80,10,1,2\n");
  const auto s = run({"simulate", cfg, "--trace", trace.string(), "--mode", "none"});
  EXPECT_EQ(s.code, kExitSolver);
  EXPECT_EQ(lines(s.out).size(), 3u);
}

TEST(Cli, ThreadsFromEnvironment) {
  ::setenv("SPECSHARE_THREADS", "abc", 1);
  const std::string cfg = config_path("standard_setup.json");
  const std::string trace = kSource + "/traces/day24.csv";
  EXPECT_EQ(run({"simulate", cfg, "--trace", trace, "--mode", "none"}).code, kExitValidation);
  ::setenv("SPECSHARE_THREADS", "3", 1);
  const auto env = run({"simulate", cfg, "--trace", trace, "--mode", "none"});
  ::unsetenv("SPECSHARE_THREADS");
  const auto flag = run({"simulate", cfg, "--trace", trace, "--mode", "none", "--threads", "1"});
  EXPECT_EQ(env.code, kExitOk);
  EXPECT_EQ(env.out, flag.out);
}

// The installed binary, as a separate process.
TEST(CliBinary, ExitStatusPropagates) {
  const std::string bin = SPECSHARE_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("--help"), 0);
  EXPECT_EQ(status("check " + config_path("desk_golden.json")), 0);
  EXPECT_EQ(status("frobnicate"), 64);
  EXPECT_EQ(status("benchmark /nonexistent.json"), 1);
}

}  // namespace
}  // namespace specshare::sim
