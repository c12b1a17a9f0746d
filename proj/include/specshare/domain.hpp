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

// Data model for the two-cell energy/spectrum cooperation problem.
//
// All quantities are stored in linear SI units: Hz, W, W/Hz, bits/s and
// linear power gains. Conversions from the logarithmic or scaled units used
// in configuration files live in the `units` namespace and are the only
// place where dB, dBm or MHz appear.

#ifndef SPECSHARE_DOMAIN_HPP_
#define SPECSHARE_DOMAIN_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specshare {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A problem instance that violates its invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The problem has no feasible point (e.g. a BS left with no bandwidth).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Unit conversion
// ---------------------------------------------------------------------------

namespace units {

inline constexpr double kHzPerMhz = 1e6;

inline constexpr double mhz_to_hz(double mhz) { return mhz * kHzPerMhz; }
inline constexpr double hz_to_mhz(double hz) { return hz / kHzPerMhz; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

// 10^((dBm - 30) / 10) W.
inline double dbm_to_watt(double dbm) {
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

}  // namespace units

// ---------------------------------------------------------------------------
// Problem data
// ---------------------------------------------------------------------------

inline constexpr std::size_t kNumBs = 2;

// Index of the other base station.
inline constexpr std::size_t other(std::size_t i) { return 1 - i; }

struct BaseStationParams {
  double bandwidth_hz = 0.0;       // W_i
  double nontx_power_w = 0.0;      // P_{c,i}
  double renewable_cap_w = 0.0;    // \bar{E}_i
  double price_renewable = 0.0;    // alpha^E_i, cost per W
  double price_grid = 0.0;         // alpha^G_i, cost per W
  double pa_efficiency = 1.0;      // eta, transmit power enters the budget as P/eta

  void validate(const std::string& where = "bs") const {
    if (!(bandwidth_hz > 0.0))
      throw ValidationError(where + ".bandwidth must be > 0");
    if (!(nontx_power_w >= 0.0))
      throw ValidationError(where + ".nontx_power must be >= 0");
    if (!(renewable_cap_w >= 0.0))
      throw ValidationError(where + ".renewable_cap must be >= 0");
    if (!(price_renewable >= 0.0))
      throw ValidationError(where + ".price_renewable must be >= 0");
    if (!(price_renewable < price_grid))
      throw ValidationError(where +
                            ".price_renewable must be below price_grid");
    if (!(pa_efficiency > 0.0 && pa_efficiency <= 1.0))
      throw ValidationError(where + ".pa_efficiency must lie in (0, 1]");
  }
};

struct MobileTerminal {
  double gain = 0.0;      // linear channel power gain g_k
  double rate_bps = 0.0;  // QoS threshold r_k

  void validate(const std::string& where = "mt") const {
    if (!(gain > 0.0) || !std::isfinite(gain))
      throw ValidationError(where + ".gain must be finite and > 0");
    if (!(rate_bps > 0.0) || !std::isfinite(rate_bps))
      throw ValidationError(where + ".rate must be finite and > 0");
  }
};

struct Scenario {
  std::array<BaseStationParams, kNumBs> bs{};
  std::array<std::vector<MobileTerminal>, kNumBs> mts{};
  double noise_psd = 0.0;         // N_0 in W/Hz
  double energy_coop_beta = 0.0;  // beta_E in [0, 1]
  bool spectrum_coop = false;     // beta_B in {0, 1}

  double beta_b() const { return spectrum_coop ? 1.0 : 0.0; }

  void validate() const {
    for (std::size_t i = 0; i < kNumBs; ++i) {
      const std::string where = "bs[" + std::to_string(i) + "]";
      bs[i].validate(where);
      if (mts[i].empty()) throw ValidationError(where + ".mts must be non-empty");
      for (std::size_t k = 0; k < mts[i].size(); ++k)
        mts[i][k].validate(where + ".mts[" + std::to_string(k) + "]");
    }
    if (!(noise_psd > 0.0)) throw ValidationError("noise_psd must be > 0");
    if (!(energy_coop_beta >= 0.0 && energy_coop_beta <= 1.0))
      throw ValidationError("energy_coop_beta must lie in [0, 1]");
  }
};

// ---------------------------------------------------------------------------
// Decisions and results
// ---------------------------------------------------------------------------

// Inter-system decision (e1, e2, w1, w2): e_i is energy BS i injects for the
// other BS, w_i is bandwidth BS i cedes to the other BS.
struct ExchangeVector {
  double e1 = 0.0;
  double e2 = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;

  double energy_out(std::size_t i) const { return i == 0 ? e1 : e2; }
  double bandwidth_out(std::size_t i) const { return i == 0 ? w1 : w2; }

  std::array<double, 4> as_array() const { return {e1, e2, w1, w2}; }
  static ExchangeVector from_array(const std::array<double, 4>& v) {
    return {v[0], v[1], v[2], v[3]};
  }

  bool non_negative() const {
    return e1 >= 0.0 && e2 >= 0.0 && w1 >= 0.0 && w2 >= 0.0;
  }

  // Removes the common part of opposite flows: e1*e2 = 0 and w1*w2 = 0.
  ExchangeVector canonical() const {
    const double e = std::min(e1, e2);
    const double w = std::min(w1, w2);
    return {e1 - e, e2 - e, w1 - w, w2 - w};
  }

  friend bool operator==(const ExchangeVector&, const ExchangeVector&) = default;
};

struct MtAllocation {
  double bandwidth_hz = 0.0;
  double power_w = 0.0;
};

struct IntraAllocation {
  double renewable_w = 0.0;  // E_i
  double grid_w = 0.0;       // G_i
  std::vector<MtAllocation> per_mt;

  double total_bandwidth() const {
    double s = 0.0;
    for (const auto& m : per_mt) s += m.bandwidth_hz;
    return s;
  }
  double total_power() const {
    double s = 0.0;
    for (const auto& m : per_mt) s += m.power_w;
    return s;
  }
};

// Marginal prices at a BS optimum. mu is the price of one more watt of load,
// lambda the price of one more hertz, nu the bandwidth water level.
struct DualPrices {
  double mu = 0.0;
  double lambda = 0.0;
  double nu = 0.0;
};

struct CostTuple {
  double c1 = 0.0;
  double c2 = 0.0;

  double operator[](std::size_t i) const { return i == 0 ? c1 : c2; }
  double sum() const { return c1 + c2; }
};

// ---------------------------------------------------------------------------
// Basic relations
// ---------------------------------------------------------------------------

// Achievable rate b * log2(1 + g p / (b n0)).
inline double utility(double bandwidth, double power, double gain,
                      double noise_psd) {
  if (power == 0.0) return 0.0;
  if (!(bandwidth > 0.0))
    throw DomainError("utility: bandwidth must be > 0 when power > 0");
  if (!(power > 0.0) || !(gain > 0.0) || !(noise_psd > 0.0))
    throw DomainError("utility: power, gain and noise psd must be positive");
  return bandwidth * std::log1p(gain * power / (bandwidth * noise_psd)) /
         std::numbers::ln2;
}

// Energy purchase cost alpha^E E + alpha^G G.
inline double cost_of(const IntraAllocation& alloc,
                      const BaseStationParams& bs) {
  return bs.price_renewable * alloc.renewable_w + bs.price_grid * alloc.grid_w;
}

}  // namespace specshare

#endif  // SPECSHARE_DOMAIN_HPP_
