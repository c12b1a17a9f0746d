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

// Full cooperation: weighted-sum cost minimization over both BSs.
//
// The problem is convex and strongly dual. Relaxing the two power budgets
// (prices mu_i) and the two bandwidth budgets (prices lambda_i) splits the
// Lagrangian into independent per-MT terms
//
//   min_b  lambda_i b + (mu_i / eta_i) p(b),
//
// whose minimizer is the Lambert-W bandwidth at water level
// nu_i = lambda_i eta_i / mu_i, plus linear terms in E, G, e and w. The dual
// g(mu, lambda) is concave and finite on the polytope
//
//   0 <= mu_i <= gamma_i aG_i,   beta_E mu_other <= mu_i,
//   0 <= lambda_i,               beta_B lambda_other <= lambda_i,
//
// and is maximized there by a deep-cut ellipsoid method (default) or a
// projected supergradient method. The primal point is rebuilt from the dual
// water levels: spectrum shares from the bandwidth surplus, bandwidths by a
// fresh water-fill at the shared budgets, energy by the exact LP.

#ifndef SPECSHARE_FULL_COOP_HPP_
#define SPECSHARE_FULL_COOP_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "specshare/domain.hpp"
#include "specshare/energy_lp.hpp"
#include "specshare/intra_solver.hpp"
#include "specshare/special_fn.hpp"

namespace specshare {

enum class DualMethod { kEllipsoid, kSubgradient };

struct FullCoopOptions {
  DualMethod method = DualMethod::kEllipsoid;
  int max_iters = 10000;
  // Relative width of the dual certificate at which the dual search stops.
  double dual_tol = 1e-12;
  // Accepted relative primal-dual gap of the returned point.
  double gap_tol = 1e-6;
  // Each restart widens the lambda search range by 4x.
  int max_restarts = 6;
};

struct FullCoopResult {
  ExchangeVector x_ex;
  std::array<IntraAllocation, kNumBs> allocs{};
  CostTuple costs;
  double weighted_sum = 0.0;
  // Prices in the caller's gamma scale.
  std::array<DualPrices, kNumBs> duals{};
  int iterations = 0;
  double dual_value = 0.0;
  double duality_gap = 0.0;
  std::array<double, kNumBs> gamma{};
};

// The dual search did not certify the requested gap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::array<DualPrices, kNumBs> best,
                   int iterations)
      : std::runtime_error(what), best_duals(best), iterations(iterations) {}

  std::array<DualPrices, kNumBs> best_duals;
  int iterations;
};

// Value of the dual function and a supergradient.
struct DualEvaluation {
  double value = 0.0;
  std::array<double, kNumBs> d_mu{};      // sum p / eta + P_c - E*
  std::array<double, kNumBs> d_lambda{};  // sum b - W
};

// g(mu, lambda) for strictly positive prices; gamma in any positive scale.
inline DualEvaluation evaluate_dual(const Scenario& s,
                                    const std::array<double, kNumBs>& gamma,
                                    const std::array<double, kNumBs>& mu,
                                    const std::array<double, kNumBs>& lambda) {
  DualEvaluation out;
  for (std::size_t i = 0; i < kNumBs; ++i) {
    if (!(mu[i] > 0.0) || !(lambda[i] > 0.0))
      throw DomainError("evaluate_dual: prices must be > 0");
    const auto& bs = s.bs[i];
    const double eta = bs.pa_efficiency;
    const WaterLevel level(lambda[i] * eta / mu[i]);
    double sum_p = 0.0;
    double sum_b = 0.0;
    for (const auto& mt : s.mts[i]) {
      const double b = bandwidth_at_waterlevel(level, mt.rate_bps, mt.gain, s.noise_psd);
      const double p = b > 0.0 ? power_for_bandwidth(b, mt, s.noise_psd)
                               : std::numeric_limits<double>::infinity();
      sum_b += b;
      sum_p += p;
      out.value += lambda[i] * b + mu[i] / eta * p;
    }
    const double renewable_margin = gamma[i] * bs.price_renewable - mu[i];
    const double e_star = renewable_margin < 0.0 ? bs.renewable_cap_w : 0.0;
    out.value += bs.renewable_cap_w * std::min(0.0, renewable_margin) +
                 mu[i] * bs.nontx_power_w - lambda[i] * bs.bandwidth_hz;
    out.d_mu[i] = sum_p / eta + bs.nontx_power_w - e_star;
    out.d_lambda[i] = sum_b - bs.bandwidth_hz;
  }
  return out;
}

// Primal point rebuilt from dual prices (gamma in the caller's scale).
inline FullCoopResult recover_primal(const Scenario& s,
                                     const std::array<double, kNumBs>& gamma,
                                     const std::array<double, kNumBs>& mu,
                                     const std::array<double, kNumBs>& lambda) {
  FullCoopResult r;
  r.gamma = gamma;
  ExchangeVector x;
  if (s.spectrum_coop) {
    std::array<double, kNumBs> surplus{};
    for (std::size_t i = 0; i < kNumBs; ++i) {
      const WaterLevel level(lambda[i] * s.bs[i].pa_efficiency / mu[i]);
      double sum_b = 0.0;
      for (const auto& mt : s.mts[i])
        sum_b += bandwidth_at_waterlevel(level, mt.rate_bps, mt.gain, s.noise_psd);
      surplus[i] = std::max(s.bs[i].bandwidth_hz - sum_b, 0.0);
    }
    x.w1 = surplus[0];
    x.w2 = surplus[1];
    x = x.canonical();
  }

  std::array<WaterFill, kNumBs> fills;
  EnergyLpInstance lp;
  lp.gamma = gamma;
  lp.beta_e = s.energy_coop_beta;
  for (std::size_t i = 0; i < kNumBs; ++i) {
    const auto& bs = s.bs[i];
    fills[i] = water_fill(s.mts[i], s.noise_psd, effective_bandwidth(i, s, x));
    lp.load_w[i] = fills[i].total_power / bs.pa_efficiency + bs.nontx_power_w;
    lp.price_renewable[i] = bs.price_renewable;
    lp.price_grid[i] = bs.price_grid;
    lp.cap_w[i] = bs.renewable_cap_w;
  }
  const EnergyLpSolution energy = solve_energy_lp(lp);
  x.e1 = energy.export_w[0];
  x.e2 = energy.export_w[1];
  r.x_ex = x;

  std::array<double, kNumBs> cost{};
  for (std::size_t i = 0; i < kNumBs; ++i) {
    auto& a = r.allocs[i];
    a.renewable_w = energy.renewable_w[i];
    a.grid_w = energy.grid_w[i];
    a.per_mt.resize(fills[i].bandwidth.size());
    for (std::size_t k = 0; k < a.per_mt.size(); ++k)
      a.per_mt[k] = {fills[i].bandwidth[k], fills[i].power[k]};
    cost[i] = cost_of(a, s.bs[i]);
    r.duals[i] = {mu[i], lambda[i], lambda[i] * s.bs[i].pa_efficiency / mu[i]};
  }
  r.costs = {cost[0], cost[1]};
  r.weighted_sum = gamma[0] * cost[0] + gamma[1] * cost[1];
  return r;
}

namespace detail {

inline constexpr int kMaxDualDim = 4;
using DualVec = std::array<double, kMaxDualDim>;
using DualMat = std::array<DualVec, kMaxDualDim>;

struct LinearCut {
  DualVec a{};
  double b = 0.0;
  bool strict = false;  // violated when a.y >= b rather than a.y > b
};

// Scaled coordinates y for the dual prices. beta_E = 1 forces mu_1 = mu_2 and
// beta_B = 1 forces lambda_1 = lambda_2, so those pairs share a coordinate
// and the feasible set keeps a nonempty interior.
struct DualChart {
  int dim = 0;
  std::array<int, kNumBs> mu_idx{};
  std::array<int, kNumBs> lambda_idx{};
  double mu_scale = 1.0;
  double lambda_scale = 1.0;
  std::vector<LinearCut> cuts;
  DualVec lower{};
  DualVec upper{};

  void prices(const DualVec& y, std::array<double, kNumBs>& mu,
              std::array<double, kNumBs>& lambda) const {
    for (std::size_t i = 0; i < kNumBs; ++i) {
      mu[i] = y[mu_idx[i]] * mu_scale;
      lambda[i] = y[lambda_idx[i]] * lambda_scale;
    }
  }

  DualVec supergradient(const DualEvaluation& ev) const {
    DualVec s{};
    for (std::size_t i = 0; i < kNumBs; ++i) {
      s[mu_idx[i]] += ev.d_mu[i] * mu_scale;
      s[lambda_idx[i]] += ev.d_lambda[i] * lambda_scale;
    }
    return s;
  }

  const LinearCut* violated(const DualVec& y) const {
    for (const auto& c : cuts) {
      double ay = 0.0;
      for (int j = 0; j < dim; ++j) ay += c.a[j] * y[j];
      if (c.strict ? ay >= c.b : ay > c.b) return &c;
    }
    return nullptr;
  }
};

inline DualChart make_dual_chart(const Scenario& s,
                                 const std::array<double, kNumBs>& gamma,
                                 double lambda_range) {
  DualChart ch;
  const bool merge_mu = s.energy_coop_beta >= 1.0;
  const bool merge_lambda = s.spectrum_coop;
  ch.mu_idx = {0, merge_mu ? 0 : 1};
  const int n_mu = merge_mu ? 1 : 2;
  ch.lambda_idx = {n_mu, merge_lambda ? n_mu : n_mu + 1};
  ch.dim = n_mu + (merge_lambda ? 1 : 2);

  const auto bench = solve_benchmark(s);
  double mu_cap = 0.0;
  double lambda_ref = 0.0;
  for (std::size_t i = 0; i < kNumBs; ++i) {
    const double cap = gamma[i] * s.bs[i].price_grid;
    const double nu = (i == 0 ? bench.first : bench.second).duals.nu;
    mu_cap = std::max(mu_cap, cap);
    lambda_ref = std::max(lambda_ref, cap * nu / s.bs[i].pa_efficiency);
  }
  ch.mu_scale = mu_cap;
  ch.lambda_scale = lambda_ref;

  for (int j = 0; j < ch.dim; ++j) {
    LinearCut pos;
    pos.a[j] = -1.0;
    pos.strict = true;
    ch.cuts.push_back(pos);
  }
  ch.upper.fill(std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < kNumBs; ++i) {
    LinearCut cap;
    cap.a[ch.mu_idx[i]] = 1.0;
    cap.b = gamma[i] * s.bs[i].price_grid / ch.mu_scale;
    ch.cuts.push_back(cap);
    ch.upper[ch.mu_idx[i]] = std::min(ch.upper[ch.mu_idx[i]], cap.b);
  }
  if (!merge_mu && s.energy_coop_beta > 0.0) {
    for (std::size_t i = 0; i < kNumBs; ++i) {
      LinearCut order;
      order.a[ch.mu_idx[other(i)]] = s.energy_coop_beta;
      order.a[ch.mu_idx[i]] = -1.0;
      ch.cuts.push_back(order);
    }
  }
  for (std::size_t i = 0; i < kNumBs; ++i) ch.upper[ch.lambda_idx[i]] = lambda_range;
  return ch;
}

// Euclidean projection onto {y : a.y <= b for all cuts} in at most two
// dimensions, by checking the interior, every edge foot and every vertex.
inline std::array<double, 2> project_polygon(
    const std::array<double, 2>& p,
    const std::vector<std::pair<std::array<double, 2>, double>>& halfplanes) {
  auto feasible = [&](const std::array<double, 2>& q) {
    for (const auto& [a, b] : halfplanes)
      if (a[0] * q[0] + a[1] * q[1] > b + 1e-12 * std::max(1.0, std::fabs(b)))
        return false;
    return true;
  };
  if (feasible(p)) return p;
  std::array<double, 2> best = p;
  double best_d = std::numeric_limits<double>::infinity();
  auto consider = [&](const std::array<double, 2>& q) {
    if (!feasible(q)) return;
    const double d = (q[0] - p[0]) * (q[0] - p[0]) + (q[1] - p[1]) * (q[1] - p[1]);
    if (d < best_d) {
      best_d = d;
      best = q;
    }
  };
  for (const auto& [a, b] : halfplanes) {
    const double nn = a[0] * a[0] + a[1] * a[1];
    if (nn == 0.0) continue;
    const double t = (a[0] * p[0] + a[1] * p[1] - b) / nn;
    consider({p[0] - t * a[0], p[1] - t * a[1]});
  }
  for (std::size_t u = 0; u < halfplanes.size(); ++u) {
    for (std::size_t v = u + 1; v < halfplanes.size(); ++v) {
      const auto& [a1, b1] = halfplanes[u];
      const auto& [a2, b2] = halfplanes[v];
      const double det = a1[0] * a2[1] - a1[1] * a2[0];
      if (std::fabs(det) < 1e-15) continue;
      consider({(b1 * a2[1] - b2 * a1[1]) / det, (a1[0] * b2 - a2[0] * b1) / det});
    }
  }
  return best;
}

struct DualSearch {
  DualVec best_y{};
  // Point whose recovered primal was best; subgradient mode only.
  DualVec primal_y{};
  bool has_primal_y = false;
  double best_value = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool found = false;
};

inline DualSearch maximize_dual_ellipsoid(const Scenario& s,
                                          const std::array<double, kNumBs>& gamma,
                                          const DualChart& ch,
                                          const FullCoopOptions& opt) {
  const int n = ch.dim;
  DualVec c{};
  DualMat P{};
  for (int j = 0; j < n; ++j) {
    const double half = 0.5 * ch.upper[j];
    c[j] = half;
    P[j][j] = n * half * half * 1.0201;
  }

  DualSearch out;
  double upper_bound = std::numeric_limits<double>::infinity();
  auto cut = [&](const DualVec& a, double b) {
    DualVec pa{};
    double apa = 0.0;
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k < n; ++k) pa[r] += P[r][k] * a[k];
      apa += a[r] * pa[r];
    }
    if (!(apa > 0.0)) return false;
    const double root = std::sqrt(apa);
    double ac = 0.0;
    for (int r = 0; r < n; ++r) ac += a[r] * c[r];
    const double alpha = (ac - b) / root;
    if (alpha >= 1.0) return false;
    if (alpha <= -1.0 / n) return true;
    const double dn = static_cast<double>(n);
    const double tau = (1.0 + dn * alpha) / (dn + 1.0);
    const double shrink = dn * dn * (1.0 - alpha * alpha) / (dn * dn - 1.0);
    const double rank1 = 2.0 * tau / (1.0 + alpha);
    for (int r = 0; r < n; ++r) c[r] -= tau * pa[r] / root;
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k)
        P[r][k] = shrink * (P[r][k] - rank1 * pa[r] * pa[k] / apa);
    for (int r = 0; r < n; ++r)
      for (int k = r + 1; k < n; ++k) P[r][k] = P[k][r] = 0.5 * (P[r][k] + P[k][r]);
    return true;
  };

  std::array<double, kNumBs> mu{};
  std::array<double, kNumBs> lambda{};
  for (; out.iterations < opt.max_iters; ++out.iterations) {
    if (const LinearCut* v = ch.violated(c)) {
      if (!cut(v->a, v->b)) break;
      continue;
    }
    ch.prices(c, mu, lambda);
    const DualEvaluation ev = evaluate_dual(s, gamma, mu, lambda);
    const DualVec sg = ch.supergradient(ev);
    if (ev.value > out.best_value) {
      out.best_value = ev.value;
      out.best_y = c;
      out.found = true;
    }
    double sps = 0.0;
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) sps += sg[r] * P[r][k] * sg[k];
    upper_bound = std::min(upper_bound, ev.value + std::sqrt(std::max(sps, 0.0)));
    if (upper_bound - out.best_value <=
        opt.dual_tol * std::max(std::fabs(out.best_value), 1e-300))
      break;
    DualVec a{};
    double ac = 0.0;
    for (int r = 0; r < n; ++r) {
      a[r] = -sg[r];
      ac += a[r] * c[r];
    }
    if (!cut(a, ac - (out.best_value - ev.value))) break;
  }
  return out;
}

// Bandwidth prices maximizing g for fixed energy prices. g is smooth in
// lambda and its maximizer equates bandwidth demand and supply: a
// water-fill per BS without spectrum sharing, one common price with it.
inline std::array<double, kNumBs> best_lambda(const Scenario& s,
                                              const std::array<double, kNumBs>& mu,
                                              double lambda_guess) {
  std::array<double, kNumBs> lambda{};
  if (!s.spectrum_coop) {
    for (std::size_t i = 0; i < kNumBs; ++i)
      lambda[i] = water_fill(s.mts[i], s.noise_psd, s.bs[i].bandwidth_hz).nu * mu[i] /
                  s.bs[i].pa_efficiency;
    return lambda;
  }
  const double supply = s.bs[0].bandwidth_hz + s.bs[1].bandwidth_hz;
  auto demand = [&](double l) {
    double d = 0.0;
    for (std::size_t i = 0; i < kNumBs; ++i) {
      const WaterLevel level(l * s.bs[i].pa_efficiency / mu[i]);
      for (const auto& mt : s.mts[i])
        d += bandwidth_at_waterlevel(level, mt.rate_bps, mt.gain, s.noise_psd);
    }
    return d;
  };
  double lo = lambda_guess, hi = lambda_guess;
  while (demand(lo) < supply) lo *= 0.25;
  while (demand(hi) > supply) hi *= 4.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    (demand(mid) > supply ? lo : hi) = mid;
  }
  lambda.fill(std::sqrt(lo * hi));
  return lambda;
}

// Projected supergradient ascent over the energy prices, with the bandwidth
// prices maximized out for every iterate. Steps are Polyak steps towards the
// best recovered primal value, or diminishing steps until one is known.
inline DualSearch maximize_dual_subgradient(const Scenario& s,
                                            const std::array<double, kNumBs>& gamma,
                                            const DualChart& ch,
                                            const FullCoopOptions& opt) {
  const int n_mu = ch.mu_idx[1] + 1;
  const double floor_y = 1e-9 * ch.upper[0];

  std::vector<std::pair<std::array<double, 2>, double>> mu_planes;
  for (const auto& cut : ch.cuts) {
    bool touches_lambda = false;
    for (int j = n_mu; j < ch.dim; ++j) touches_lambda = touches_lambda || cut.a[j] != 0.0;
    if (touches_lambda) continue;
    mu_planes.push_back({{cut.a[0], n_mu == 2 ? cut.a[1] : 0.0}, cut.strict ? -floor_y : cut.b});
  }
  auto project = [&](std::array<double, 2> y) {
    if (n_mu == 2) return project_polygon(y, mu_planes);
    return std::array<double, 2>{std::clamp(y[0], floor_y, ch.upper[0]), 0.0};
  };

  std::array<double, 2> ym = project({0.5 * ch.upper[0], 0.5 * ch.upper[1]});
  DualSearch out;
  double primal_bound = std::numeric_limits<double>::infinity();
  double lambda_guess = ch.lambda_scale;
  std::array<double, kNumBs> mu{};
  for (; out.iterations < opt.max_iters; ++out.iterations) {
    for (std::size_t i = 0; i < kNumBs; ++i) mu[i] = ym[ch.mu_idx[i]] * ch.mu_scale;
    const auto lambda = best_lambda(s, mu, lambda_guess);
    lambda_guess = lambda[0];
    const DualEvaluation ev = evaluate_dual(s, gamma, mu, lambda);
    DualVec y{};
    y[0] = ym[0];
    y[1] = ym[1];
    for (std::size_t i = 0; i < kNumBs; ++i) y[ch.lambda_idx[i]] = lambda[i] / ch.lambda_scale;
    if (ev.value > out.best_value) {
      out.best_value = ev.value;
      out.best_y = y;
      out.found = true;
    }
    const double ws = recover_primal(s, gamma, mu, lambda).weighted_sum;
    if (ws < primal_bound) {
      primal_bound = ws;
      out.primal_y = y;
      out.has_primal_y = true;
    }
    if (primal_bound - out.best_value <=
        opt.gap_tol * 0.1 * std::max(std::fabs(primal_bound), 1e-300))
      break;

    std::array<double, 2> sg{};
    for (std::size_t i = 0; i < kNumBs; ++i) sg[ch.mu_idx[i]] += ev.d_mu[i] * ch.mu_scale;
    const double norm2 = sg[0] * sg[0] + sg[1] * sg[1];
    if (norm2 == 0.0) break;
    double step = (primal_bound - ev.value) / norm2;
    if (!std::isfinite(step) || step <= 0.0)
      step = 0.1 / std::sqrt(static_cast<double>(out.iterations + 1) * norm2);
    ym = project({ym[0] + step * sg[0], ym[1] + step * sg[1]});
  }
  return out;
}

}  // namespace detail

// Minimizes gamma_1 C_1 + gamma_2 C_2 over all exchange and allocation
// decisions of both BSs.
inline FullCoopResult solve_weighted_sum(const Scenario& s,
                                         std::array<double, kNumBs> gamma,
                                         const FullCoopOptions& opt = {}) {
  s.validate();
  if (!(gamma[0] >= 0.0) || !(gamma[1] >= 0.0) || !(gamma[0] + gamma[1] > 0.0))
    throw DomainError("solve_weighted_sum: weights must be >= 0 and not both 0");

  if (s.energy_coop_beta == 0.0 && !s.spectrum_coop) {
    const auto bench = solve_benchmark(s);
    std::array<double, kNumBs> mu{};
    std::array<double, kNumBs> lambda{};
    for (std::size_t i = 0; i < kNumBs; ++i) {
      const auto& d = (i == 0 ? bench.first : bench.second).duals;
      mu[i] = gamma[i] * d.mu;
      lambda[i] = gamma[i] * d.lambda;
    }
    FullCoopResult r;
    r.gamma = gamma;
    r.allocs = {bench.first.alloc, bench.second.alloc};
    r.costs = {bench.first.cost, bench.second.cost};
    r.weighted_sum = gamma[0] * r.costs.c1 + gamma[1] * r.costs.c2;
    for (std::size_t i = 0; i < kNumBs; ++i)
      r.duals[i] = {mu[i], lambda[i], (i == 0 ? bench.first : bench.second).duals.nu};
    r.dual_value = r.weighted_sum;
    return r;
  }

  // Work with weights summing to 2; a zero weight is nudged so every price
  // stays strictly positive.
  const double to_caller = 0.5 * (gamma[0] + gamma[1]);
  std::array<double, kNumBs> g = {gamma[0] / to_caller, gamma[1] / to_caller};
  for (auto& v : g) v = std::max(v, 1e-9);

  double lambda_range = 4.0;
  int total_iters = 0;
  std::array<DualPrices, kNumBs> best_duals{};
  for (int attempt = 0; attempt <= opt.max_restarts; ++attempt, lambda_range *= 4.0) {
    const detail::DualChart ch = detail::make_dual_chart(s, g, lambda_range);
    const detail::DualSearch search =
        opt.method == DualMethod::kEllipsoid
            ? detail::maximize_dual_ellipsoid(s, g, ch, opt)
            : detail::maximize_dual_subgradient(s, g, ch, opt);
    total_iters += search.iterations;
    if (!search.found) continue;

    std::array<double, kNumBs> mu{};
    std::array<double, kNumBs> lambda{};
    ch.prices(search.has_primal_y ? search.primal_y : search.best_y, mu, lambda);
    FullCoopResult r = recover_primal(s, g, mu, lambda);
    for (std::size_t i = 0; i < kNumBs; ++i)
      best_duals[i] = {mu[i] * to_caller, lambda[i] * to_caller, r.duals[i].nu};
    const double gap = r.weighted_sum - search.best_value;
    if (gap <= opt.gap_tol * std::max(std::fabs(r.weighted_sum), 1e-300)) {
      r.gamma = gamma;
      r.duals = best_duals;
      r.weighted_sum = gamma[0] * r.costs.c1 + gamma[1] * r.costs.c2;
      r.dual_value = search.best_value * to_caller;
      r.duality_gap = r.weighted_sum - r.dual_value;
      r.iterations = total_iters;
      return r;
    }
  }
  throw ConvergenceError("solve_weighted_sum: dual search did not close the gap",
                         best_duals, total_iters);
}

struct ParetoPoint {
  std::array<double, kNumBs> gamma{};
  CostTuple costs;
  ExchangeVector x_ex;
};

// Weighted-sum solutions for gamma = (t, 1 - t), t = j / (n + 1), j = 1..n,
// sorted by C_1.
inline std::vector<ParetoPoint> pareto_sweep(const Scenario& s, int n_points,
                                             const FullCoopOptions& opt = {}) {
  if (n_points < 2) throw DomainError("pareto_sweep: need at least 2 points");
  std::vector<ParetoPoint> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int j = 1; j <= n_points; ++j) {
    const double t = static_cast<double>(j) / (n_points + 1);
    const std::array<double, kNumBs> gamma = {t, 1.0 - t};
    const FullCoopResult r = solve_weighted_sum(s, gamma, opt);
    out.push_back({gamma, r.costs, r.x_ex});
  }
  std::stable_sort(out.begin(), out.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    return a.costs.c1 < b.costs.c1;
  });
  return out;
}

}  // namespace specshare

#endif  // SPECSHARE_FULL_COOP_HPP_
