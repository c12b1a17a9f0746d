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

// Per-BS cost minimization under a fixed exchange vector.
//
// With the exchange vector x_ex fixed, BS i sees an effective bandwidth
// W_i + beta_B w_other - w_i and a net energy export e_i - beta_E e_other.
// Every QoS constraint is tight at the optimum, so the transmit power of
// an MT is a convex function of its bandwidth alone and the bandwidth split
// is a water-filling over MTs. The energy purchase is then a merit-order
// fill: renewable first, grid for the remainder.

#ifndef SPECSHARE_INTRA_SOLVER_HPP_
#define SPECSHARE_INTRA_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "specshare/domain.hpp"
#include "specshare/special_fn.hpp"

namespace specshare {

struct IntraResult {
  IntraAllocation alloc;
  double cost = 0.0;
  DualPrices duals;
  double effective_bandwidth = 0.0;
  double effective_load = 0.0;
  // load == renewable cap: mu could be anything in [alpha^E, alpha^G]; the
  // reported mu is alpha^E.
  bool at_kink = false;
  // Inbound energy exceeds consumption; the excess is discarded.
  bool energy_surplus = false;
};

// Minimum power delivering rate r over bandwidth b: (b n0 / g)(2^{r/b} - 1).
inline double power_for_bandwidth(double bandwidth, const MobileTerminal& mt,
                                  double noise_psd) {
  if (!(bandwidth > 0.0))
    throw DomainError("power_for_bandwidth: bandwidth must be > 0");
  if (std::isinf(bandwidth))
    return noise_psd * mt.rate_bps * std::numbers::ln2 / mt.gain;
  return bandwidth * noise_psd / mt.gain *
         std::expm1(mt.rate_bps * std::numbers::ln2 / bandwidth);
}

// Transmit-power-minimal split of a bandwidth budget over a set of MTs.
struct WaterFill {
  double nu = 0.0;
  std::vector<double> bandwidth;
  std::vector<double> power;
  double total_power = 0.0;
};

inline WaterFill water_fill(std::span<const MobileTerminal> mts,
                            double noise_psd, double budget_hz) {
  if (mts.empty()) throw DomainError("water_fill: no MTs");
  if (!(budget_hz > 0.0) || !std::isfinite(budget_hz))
    throw InfeasibleError("water_fill: bandwidth budget must be finite and > 0");

  const std::size_t n = mts.size();
  auto sum_at = [&](double nu) {
    double s = 0.0;
    for (const auto& mt : mts)
      s += bandwidth_at_waterlevel(WaterLevel(nu), mt.rate_bps, mt.gain, noise_psd);
    return s;
  };

  // At the water level that gives MT k exactly budget/n, the sum is >= budget
  // for the smallest such level and <= budget for the largest.
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& mt : mts) {
    const double y = mt.rate_bps * std::numbers::ln2 * static_cast<double>(n) / budget_hz;
    const double nu_k = noise_psd / mt.gain * detail::waterlevel_of_exponent(y);
    if (!std::isfinite(nu_k) || !(nu_k > 0.0))
      throw InfeasibleError(
          "water_fill: QoS demand needs more power than is representable");
    lo = std::min(lo, nu_k);
    hi = std::max(hi, nu_k);
  }

  double nu = lo;
  if (hi > lo) {
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = std::sqrt(lo * hi);
      if (!(mid > lo && mid < hi)) break;
      if (sum_at(mid) > budget_hz) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    nu = std::sqrt(lo * hi);
  }

  WaterFill out;
  out.nu = nu;
  out.bandwidth.resize(n);
  double total_b = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out.bandwidth[k] = bandwidth_at_waterlevel(WaterLevel(nu), mts[k].rate_bps,
                                               mts[k].gain, noise_psd);
    total_b += out.bandwidth[k];
  }
  // Close the last ulps of the budget.
  const double scale = budget_hz / total_b;
  out.power.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.bandwidth[k] *= scale;
    out.power[k] = power_for_bandwidth(out.bandwidth[k], mts[k], noise_psd);
    out.total_power += out.power[k];
  }
  return out;
}

// Merit-order energy purchase for a given load, and the marginal prices.
inline IntraResult finish_energy(const BaseStationParams& bs, WaterFill fill,
                                 double budget_hz, double net_export_w) {
  IntraResult r;
  r.effective_bandwidth = budget_hz;
  r.effective_load = fill.total_power / bs.pa_efficiency + bs.nontx_power_w + net_export_w;
  const double load = r.effective_load;
  r.energy_surplus = load < 0.0;
  r.alloc.renewable_w = std::clamp(load, 0.0, bs.renewable_cap_w);
  r.alloc.grid_w = std::max(load - bs.renewable_cap_w, 0.0);
  r.alloc.per_mt.resize(fill.bandwidth.size());
  for (std::size_t k = 0; k < fill.bandwidth.size(); ++k)
    r.alloc.per_mt[k] = {fill.bandwidth[k], fill.power[k]};
  r.cost = cost_of(r.alloc, bs);
  r.at_kink = std::fabs(load - bs.renewable_cap_w) <=
              1e-9 * std::max(1.0, bs.renewable_cap_w);
  r.duals.mu = load <= bs.renewable_cap_w ? bs.price_renewable : bs.price_grid;
  r.duals.nu = fill.nu;
  r.duals.lambda = fill.nu * r.duals.mu / bs.pa_efficiency;
  return r;
}

// Solve one BS given only its local data, its effective bandwidth and its
// net energy export e_i - beta_E e_other.
inline IntraResult solve_local(const BaseStationParams& bs,
                               std::span<const MobileTerminal> mts,
                               double noise_psd, double budget_hz,
                               double net_export_w) {
  if (!(budget_hz > 0.0))
    throw InfeasibleError("solve_intra: effective bandwidth must be > 0");
  return finish_energy(bs, water_fill(mts, noise_psd, budget_hz), budget_hz,
                       net_export_w);
}

inline double effective_bandwidth(std::size_t i, const Scenario& s,
                                  const ExchangeVector& x) {
  return s.bs[i].bandwidth_hz + s.beta_b() * x.bandwidth_out(other(i)) -
         x.bandwidth_out(i);
}

inline double net_energy_export(std::size_t i, const Scenario& s,
                                const ExchangeVector& x) {
  return x.energy_out(i) - s.energy_coop_beta * x.energy_out(other(i));
}

// Minimum cost of BS i (0-based) under exchange vector x.
inline IntraResult solve_intra(std::size_t i, const Scenario& s,
                               const ExchangeVector& x) {
  if (i >= kNumBs) throw DomainError("solve_intra: bs index out of range");
  if (!x.non_negative())
    throw DomainError("solve_intra: exchange vector must be non-negative");
  return solve_local(s.bs[i], s.mts[i], s.noise_psd, effective_bandwidth(i, s, x),
                     net_energy_export(i, s, x));
}

// Non-cooperative optimum of both BSs (x_ex = 0).
inline std::pair<IntraResult, IntraResult> solve_benchmark(const Scenario& s) {
  const ExchangeVector zero{};
  return {solve_intra(0, s, zero), solve_intra(1, s, zero)};
}

// Residuals of an intra solution, for self-checks on emitted results.
struct IntraResiduals {
  double budget_rel = 0.0;          // |sum b - B| / B
  double qos_rel = 0.0;             // max_k |u_k - r_k| / r_k
  double stationarity_rel = 0.0;    // max_k |KKT residual| / nu
  double balance_abs = 0.0;         // |E + G - max(load, 0)|
  bool merit_order = true;          // G > 0 implies E = cap

  bool ok(double tol = 1e-9) const {
    return budget_rel <= tol && qos_rel <= tol && stationarity_rel <= tol &&
           balance_abs <= tol * 1e3 && merit_order;
  }
};

inline IntraResiduals intra_residuals(const IntraResult& r,
                                      const BaseStationParams& bs,
                                      std::span<const MobileTerminal> mts,
                                      double noise_psd) {
  IntraResiduals res;
  const auto& per = r.alloc.per_mt;
  res.budget_rel = std::fabs(r.alloc.total_bandwidth() - r.effective_bandwidth) /
                   r.effective_bandwidth;
  for (std::size_t k = 0; k < mts.size(); ++k) {
    const double b = per[k].bandwidth_hz;
    const double u = utility(b, per[k].power_w, mts[k].gain, noise_psd);
    res.qos_rel = std::max(res.qos_rel, std::fabs(u - mts[k].rate_bps) / mts[k].rate_bps);
    const double x = mts[k].rate_bps / b;
    const double two_x = std::exp2(x);
    const double a = noise_psd / mts[k].gain;
    const double kkt = a * (two_x - 1.0) - a * x * std::numbers::ln2 * two_x + r.duals.nu;
    res.stationarity_rel = std::max(res.stationarity_rel, std::fabs(kkt) / r.duals.nu);
  }
  res.balance_abs = std::fabs(r.alloc.renewable_w + r.alloc.grid_w -
                              std::max(r.effective_load, 0.0));
  const double cap_tol = 1e-12 * std::max(1.0, bs.renewable_cap_w);
  res.merit_order = !(r.alloc.grid_w > 0.0) ||
                    std::fabs(r.alloc.renewable_w - bs.renewable_cap_w) <= cap_tol;
  return res;
}

}  // namespace specshare

#endif  // SPECSHARE_INTRA_SOLVER_HPP_
