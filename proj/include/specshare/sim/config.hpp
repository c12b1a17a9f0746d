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

// JSON scenario configuration and seeded MT placement.
//
// Field names carry their units (bandwidth_mhz, noise_psd_dbm_per_hz, ...).
// Values stay in those units inside ScenarioConfig, so parse -> serialize ->
// parse is exact; to_scenario() is the single place where they are
// converted to SI.

#ifndef SPECSHARE_SIM_CONFIG_HPP_
#define SPECSHARE_SIM_CONFIG_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "specshare/domain.hpp"

namespace specshare::sim {

struct MtConfig {
  double gain_db = 0.0;
  double rate_bps = 0.0;

  friend bool operator==(const MtConfig&, const MtConfig&) = default;
};

struct BaseStationConfig {
  double bandwidth_mhz = 0.0;
  double nontx_power_w = 0.0;
  double renewable_cap_w = 0.0;
  double price_renewable_per_w = 0.0;
  double price_grid_per_w = 0.0;
  std::optional<double> pa_efficiency;
  std::optional<std::vector<MtConfig>> mts;

  friend bool operator==(const BaseStationConfig&, const BaseStationConfig&) = default;
};

// g = c0 (d / d0)^-exponent, c0 in dB.
struct PathlossConfig {
  double c0_db = 0.0;
  double d0_m = 0.0;
  double exponent = 0.0;

  friend bool operator==(const PathlossConfig&, const PathlossConfig&) = default;
};

struct GenerationConfig {
  double cell_radius_m = 0.0;
  std::optional<double> min_distance_m;  // default: the pathloss reference d0
  PathlossConfig pathloss;
  std::array<int, kNumBs> mt_counts{};
  std::array<double, kNumBs> rate_bps{};
  std::uint64_t rng_seed = 0;

  double inner_radius() const { return min_distance_m.value_or(pathloss.d0_m); }

  friend bool operator==(const GenerationConfig&, const GenerationConfig&) = default;
};

struct ScenarioConfig {
  double noise_psd_dbm_per_hz = 0.0;
  double energy_coop_beta = 0.0;
  bool spectrum_coop = false;
  std::array<BaseStationConfig, kNumBs> base_stations{};
  std::optional<GenerationConfig> generation;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

using nlohmann::json;

inline const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path + "." + key + ": missing");
  return *it;
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(path + ": must be finite");
  return d;
}

inline double number_field(const json& obj, const std::string& key, const std::string& path) {
  return number(field(obj, key, path), path + "." + key);
}

inline std::optional<double> optional_number(const json& obj, const std::string& key,
                                             const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  return number(*it, path + "." + key);
}

inline void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                           const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ValidationError(path + "." + key + ": unknown field");
  }
}

inline int count_value(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ValidationError(path + ": expected an integer");
  const auto n = v.get<std::int64_t>();
  if (n < 1 || n > 100000) throw ValidationError(path + ": must lie in [1, 100000]");
  return static_cast<int>(n);
}

inline std::array<const json*, kNumBs> pair_field(const json& obj, const std::string& key,
                                                  const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_array() || v.size() != kNumBs)
    throw ValidationError(path + "." + key + ": expected an array of 2");
  return {&v[0], &v[1]};
}

}  // namespace detail

inline ScenarioConfig config_from_json(const nlohmann::json& j) {
  using namespace detail;
  const std::string root = "config";
  if (!j.is_object()) throw ValidationError(root + ": expected an object");
  reject_unknown(j,
                 {"noise_psd_dbm_per_hz", "energy_coop_beta", "spectrum_coop",
                  "base_stations", "generation"},
                 root);
  ScenarioConfig c;
  c.noise_psd_dbm_per_hz = number_field(j, "noise_psd_dbm_per_hz", root);
  c.energy_coop_beta = number_field(j, "energy_coop_beta", root);
  const json& sc = field(j, "spectrum_coop", root);
  if (sc.is_boolean()) {
    c.spectrum_coop = sc.get<bool>();
  } else if (sc.is_number_integer() && (sc.get<int>() == 0 || sc.get<int>() == 1)) {
    c.spectrum_coop = sc.get<int>() == 1;
  } else {
    throw ValidationError(root + ".spectrum_coop: expected true/false or 0/1");
  }

  const auto bss = pair_field(j, "base_stations", root);
  for (std::size_t i = 0; i < kNumBs; ++i) {
    const std::string path = root + ".base_stations[" + std::to_string(i) + "]";
    const json& b = *bss[i];
    if (!b.is_object()) throw ValidationError(path + ": expected an object");
    reject_unknown(b,
                   {"bandwidth_mhz", "nontx_power_w", "renewable_cap_w",
                    "price_renewable_per_w", "price_grid_per_w", "pa_efficiency", "mts"},
                   path);
    auto& bc = c.base_stations[i];
    bc.bandwidth_mhz = number_field(b, "bandwidth_mhz", path);
    bc.nontx_power_w = number_field(b, "nontx_power_w", path);
    bc.renewable_cap_w = number_field(b, "renewable_cap_w", path);
    bc.price_renewable_per_w = number_field(b, "price_renewable_per_w", path);
    bc.price_grid_per_w = number_field(b, "price_grid_per_w", path);
    bc.pa_efficiency = optional_number(b, "pa_efficiency", path);
    if (const auto it = b.find("mts"); it != b.end()) {
      if (!it->is_array()) throw ValidationError(path + ".mts: expected an array");
      std::vector<MtConfig> mts;
      for (std::size_t k = 0; k < it->size(); ++k) {
        const std::string mp = path + ".mts[" + std::to_string(k) + "]";
        const json& m = (*it)[k];
        if (!m.is_object()) throw ValidationError(mp + ": expected an object");
        reject_unknown(m, {"gain_db", "rate_bps"}, mp);
        mts.push_back({number_field(m, "gain_db", mp), number_field(m, "rate_bps", mp)});
      }
      bc.mts = std::move(mts);
    }
  }

  if (const auto it = j.find("generation"); it != j.end()) {
    const std::string path = root + ".generation";
    const json& g = *it;
    if (!g.is_object()) throw ValidationError(path + ": expected an object");
    reject_unknown(g,
                   {"cell_radius_m", "min_distance_m", "pathloss", "mt_counts", "rate_bps",
                    "rng_seed"},
                   path);
    GenerationConfig gc;
    gc.cell_radius_m = number_field(g, "cell_radius_m", path);
    gc.min_distance_m = optional_number(g, "min_distance_m", path);
    const json& pl = field(g, "pathloss", path);
    reject_unknown(pl, {"c0_db", "d0_m", "exponent"}, path + ".pathloss");
    gc.pathloss.c0_db = number_field(pl, "c0_db", path + ".pathloss");
    gc.pathloss.d0_m = number_field(pl, "d0_m", path + ".pathloss");
    gc.pathloss.exponent = number_field(pl, "exponent", path + ".pathloss");
    const auto counts = pair_field(g, "mt_counts", path);
    const auto rates = pair_field(g, "rate_bps", path);
    for (std::size_t i = 0; i < kNumBs; ++i) {
      const std::string idx = "[" + std::to_string(i) + "]";
      gc.mt_counts[i] = count_value(*counts[i], path + ".mt_counts" + idx);
      gc.rate_bps[i] = number(*rates[i], path + ".rate_bps" + idx);
    }
    const json& seed = field(g, "rng_seed", path);
    if (!seed.is_number_unsigned())
      throw ValidationError(path + ".rng_seed: expected a non-negative integer");
    gc.rng_seed = seed.get<std::uint64_t>();
    c.generation = gc;
  }
  return c;
}

inline nlohmann::json config_to_json(const ScenarioConfig& c) {
  nlohmann::json j;
  j["noise_psd_dbm_per_hz"] = c.noise_psd_dbm_per_hz;
  j["energy_coop_beta"] = c.energy_coop_beta;
  j["spectrum_coop"] = c.spectrum_coop;
  j["base_stations"] = nlohmann::json::array();
  for (const auto& b : c.base_stations) {
    nlohmann::json jb;
    jb["bandwidth_mhz"] = b.bandwidth_mhz;
    jb["nontx_power_w"] = b.nontx_power_w;
    jb["renewable_cap_w"] = b.renewable_cap_w;
    jb["price_renewable_per_w"] = b.price_renewable_per_w;
    jb["price_grid_per_w"] = b.price_grid_per_w;
    if (b.pa_efficiency) jb["pa_efficiency"] = *b.pa_efficiency;
    if (b.mts) {
      jb["mts"] = nlohmann::json::array();
      for (const auto& m : *b.mts) jb["mts"].push_back({{"gain_db", m.gain_db}, {"rate_bps", m.rate_bps}});
    }
    j["base_stations"].push_back(jb);
  }
  if (c.generation) {
    const auto& g = *c.generation;
    nlohmann::json jg;
    jg["cell_radius_m"] = g.cell_radius_m;
    if (g.min_distance_m) jg["min_distance_m"] = *g.min_distance_m;
    jg["pathloss"] = {{"c0_db", g.pathloss.c0_db},
                      {"d0_m", g.pathloss.d0_m},
                      {"exponent", g.pathloss.exponent}};
    jg["mt_counts"] = {g.mt_counts[0], g.mt_counts[1]};
    jg["rate_bps"] = {g.rate_bps[0], g.rate_bps[1]};
    jg["rng_seed"] = g.rng_seed;
    j["generation"] = jg;
  }
  return j;
}

inline ScenarioConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

inline std::string serialize_config(const ScenarioConfig& c) {
  return config_to_json(c).dump(2) + "\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ScenarioConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

// ---------------------------------------------------------------------------
// Seeded placement
// ---------------------------------------------------------------------------

// Uniform double in [0, 1) from the top 53 bits; fixed across platforms,
// unlike std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for a trace slot without its own seed column.
inline std::uint64_t slot_seed(std::uint64_t base, std::uint64_t slot) {
  return splitmix64(base ^ splitmix64(slot));
}

inline double pathloss_gain(const PathlossConfig& pl, double distance_m) {
  return units::db_to_linear(pl.c0_db) * std::pow(distance_m / pl.d0_m, -pl.exponent);
}

inline void validate_generation(const GenerationConfig& g) {
  const std::string path = "config.generation";
  if (!(g.pathloss.d0_m > 0.0)) throw ValidationError(path + ".pathloss.d0_m: must be > 0");
  if (!(g.pathloss.exponent > 0.0))
    throw ValidationError(path + ".pathloss.exponent: must be > 0");
  if (!(g.inner_radius() > 0.0)) throw ValidationError(path + ".min_distance_m: must be > 0");
  if (!(g.cell_radius_m > g.inner_radius()))
    throw ValidationError(path + ".cell_radius_m: must exceed the minimum distance");
  for (std::size_t i = 0; i < kNumBs; ++i)
    if (!(g.rate_bps[i] > 0.0))
      throw ValidationError(path + ".rate_bps[" + std::to_string(i) + "]: must be > 0");
}

// MTs placed uniformly over the annulus between the minimum distance and the
// cell radius around each BS. Only the distance matters for the gain, so
// the angle is not drawn. BS 1's MTs are drawn first.
inline std::array<std::vector<MobileTerminal>, kNumBs> generate_mts(
    const GenerationConfig& g, std::array<int, kNumBs> counts, std::uint64_t seed) {
  validate_generation(g);
  std::mt19937_64 rng(seed);
  const double r0 = g.inner_radius();
  const double r1 = g.cell_radius_m;
  std::array<std::vector<MobileTerminal>, kNumBs> out;
  for (std::size_t i = 0; i < kNumBs; ++i) {
    if (counts[i] < 1)
      throw ValidationError("mt count for bs[" + std::to_string(i) + "] must be >= 1");
    for (int k = 0; k < counts[i]; ++k) {
      const double u = unit_uniform(rng);
      const double d = std::sqrt(r0 * r0 + u * (r1 * r1 - r0 * r0));
      out[i].push_back({pathloss_gain(g.pathloss, d), g.rate_bps[i]});
    }
  }
  return out;
}

inline std::array<std::vector<MobileTerminal>, kNumBs> generate_mts(const ScenarioConfig& c) {
  if (!c.generation) throw ValidationError("config.generation: missing");
  return generate_mts(*c.generation, c.generation->mt_counts, c.generation->rng_seed);
}

// SI scenario. MTs come from the explicit lists or from the generation
// block (exactly one of the two must be present).
inline Scenario to_scenario(const ScenarioConfig& c) {
  Scenario s;
  s.noise_psd = units::dbm_to_watt(c.noise_psd_dbm_per_hz);
  s.energy_coop_beta = c.energy_coop_beta;
  s.spectrum_coop = c.spectrum_coop;
  bool any_explicit = false;
  bool all_explicit = true;
  for (std::size_t i = 0; i < kNumBs; ++i) {
    const auto& b = c.base_stations[i];
    auto& bs = s.bs[i];
    bs.bandwidth_hz = units::mhz_to_hz(b.bandwidth_mhz);
    bs.nontx_power_w = b.nontx_power_w;
    bs.renewable_cap_w = b.renewable_cap_w;
    bs.price_renewable = b.price_renewable_per_w;
    bs.price_grid = b.price_grid_per_w;
    bs.pa_efficiency = b.pa_efficiency.value_or(1.0);
    any_explicit = any_explicit || b.mts.has_value();
    all_explicit = all_explicit && b.mts.has_value();
    if (b.mts)
      for (const auto& m : *b.mts) s.mts[i].push_back({units::db_to_linear(m.gain_db), m.rate_bps});
  }
  if (c.generation && any_explicit)
    throw ValidationError("config: give either explicit mts or a generation block, not both");
  if (!c.generation && !all_explicit)
    throw ValidationError("config: every base station needs mts unless a generation block is given");
  if (c.generation) s.mts = generate_mts(c);
  try {
    s.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return s;
}

}  // namespace specshare::sim

#endif  // SPECSHARE_SIM_CONFIG_HPP_
