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

// Partial cooperation: both BSs lower their costs together.
//
// Each BS only reports its marginal prices (mu_i, lambda_i) at the current
// exchange vector. A trade of energy from one BS against spectrum from the
// other helps both exactly when their price ratios lambda/mu differ by more
// than the energy transfer loss beta_E. The descent direction splits the
// common gain in a fixed ratio rho, and the exchange vector moves along it
// until no mutually improving trade is left.

#ifndef SPECSHARE_PARTIAL_COOP_HPP_
#define SPECSHARE_PARTIAL_COOP_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "specshare/domain.hpp"
#include "specshare/intra_solver.hpp"

namespace specshare {

using Vec4 = std::array<double, 4>;  // over (e1, e2, w1, w2)

// Cost gradients with respect to the exchange vector.
struct GradientPair {
  Vec4 grad_c1{};
  Vec4 grad_c2{};
  // Some BS sits at load == renewable cap, where only one-sided derivatives
  // exist; the gradients use the lower price.
  bool at_kink = false;
};

inline GradientPair gradients_from_duals(const std::array<DualPrices, kNumBs>& d,
                                         double beta_e, double beta_b) {
  GradientPair g;
  for (std::size_t i = 0; i < kNumBs; ++i) {
    Vec4& grad = i == 0 ? g.grad_c1 : g.grad_c2;
    grad[i] = d[i].mu;
    grad[other(i)] = -beta_e * d[i].mu;
    grad[2 + i] = d[i].lambda;
    grad[2 + other(i)] = -beta_b * d[i].lambda;
  }
  return g;
}

inline GradientPair marginal_gradients(const Scenario& s, const ExchangeVector& x) {
  const IntraResult r1 = solve_intra(0, s, x);
  const IntraResult r2 = solve_intra(1, s, x);
  GradientPair g = gradients_from_duals({r1.duals, r2.duals}, s.energy_coop_beta, s.beta_b());
  g.at_kink = r1.at_kink || r2.at_kink;
  return g;
}

enum class Branch { kShareE1ForW2, kShareE2ForW1, kNone };

inline std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::kShareE1ForW2: return "share_e1_for_w2";
    case Branch::kShareE2ForW1: return "share_e2_for_w1";
    case Branch::kNone: return "none";
  }
  return "none";
}

// Whether both costs can fall together, and along which trade.
// A BS already exporting energy keeps its trade; only equality of the
// thresholds (within eps_cond, relative) stops it, since the trade can then
// be reversed as well as extended.
inline Branch improvement_conditions(const std::array<DualPrices, kNumBs>& d,
                                     const ExchangeVector& x, double beta_e,
                                     double eps_cond = 1e-6) {
  // lambda_1/mu_1 > lambda_2/(mu_2 beta_E)  <=>  beta_E lambda_1 mu_2 > lambda_2 mu_1
  const double a1 = beta_e * d[0].lambda * d[1].mu;
  const double b1 = d[1].lambda * d[0].mu;
  const double a2 = beta_e * d[1].lambda * d[0].mu;
  const double b2 = d[0].lambda * d[1].mu;
  auto greater = [&](double a, double b) { return a - b > eps_cond * std::max(a, b); };
  auto differ = [&](double a, double b) {
    return std::fabs(a - b) > eps_cond * std::max(a, b);
  };
  if (x.e1 > 0.0) return differ(a1, b1) ? Branch::kShareE1ForW2 : Branch::kNone;
  if (x.e2 > 0.0) return differ(a2, b2) ? Branch::kShareE2ForW1 : Branch::kNone;
  if (greater(a1, b1)) return Branch::kShareE1ForW2;
  if (greater(a2, b2)) return Branch::kShareE2ForW1;
  return Branch::kNone;
}

// Direction along which C_1 and C_2 change in the ratio rho : 1.
//   ShareE1ForW2: s [rho lambda_2 + lambda_1, 0, 0, mu_1 + rho beta_E mu_2],
//                 s = sign(lambda_1 mu_2 beta_E - lambda_2 mu_1)
//   ShareE2ForW1: s [0, lambda_1 + rho lambda_2, beta_E mu_1 + rho mu_2, 0],
//                 s = sign(lambda_2 mu_1 beta_E - lambda_1 mu_2)
// with sign(0) = +1.
inline Vec4 descent_direction(const std::array<DualPrices, kNumBs>& d, Branch branch,
                              double rho, double beta_e) {
  if (branch == Branch::kNone) throw DomainError("descent_direction: no branch");
  if (!(rho > 0.0)) throw DomainError("descent_direction: rho must be > 0");
  const double l1 = d[0].lambda, m1 = d[0].mu, l2 = d[1].lambda, m2 = d[1].mu;
  if (branch == Branch::kShareE1ForW2) {
    const double s = l1 * m2 * beta_e - l2 * m1 >= 0.0 ? 1.0 : -1.0;
    return {s * (rho * l2 + l1), 0.0, 0.0, s * (m1 + rho * beta_e * m2)};
  }
  const double s = l2 * m1 * beta_e - l1 * m2 >= 0.0 ? 1.0 : -1.0;
  return {0.0, s * (l1 + rho * l2), s * (beta_e * m1 + rho * m2), 0.0};
}

// Predicted change of C_2 per unit step along descent_direction; C_1 changes
// by rho times this. Never positive.
inline double sigma(const std::array<DualPrices, kNumBs>& d, Branch branch,
                    double beta_e) {
  const double l1 = d[0].lambda, m1 = d[0].mu, l2 = d[1].lambda, m2 = d[1].mu;
  switch (branch) {
    case Branch::kShareE1ForW2: return -std::fabs(l1 * m2 * beta_e - l2 * m1);
    case Branch::kShareE2ForW1: return -std::fabs(l2 * m1 * beta_e - l1 * m2);
    case Branch::kNone: return 0.0;
  }
  return 0.0;
}

// One BS in the distributed algorithm. It knows only its own parameters and
// MTs; from the shared exchange vector it derives its effective bandwidth
// and net energy export, and it answers with two prices.
class BaseStationAgent {
 public:
  struct PriceReport {
    double mu = 0.0;
    double lambda = 0.0;
  };

  BaseStationAgent(std::size_t index, const Scenario& s)
      : index_(index),
        params_(s.bs[index]),
        mts_(s.mts[index]),
        noise_psd_(s.noise_psd),
        beta_e_(s.energy_coop_beta),
        beta_b_(s.beta_b()) {}

  // Re-solves the local problem at x.
  void update(const ExchangeVector& x) {
    const std::size_t o = other(index_);
    const double budget = params_.bandwidth_hz + beta_b_ * x.bandwidth_out(o) -
                          x.bandwidth_out(index_);
    const double net_export = x.energy_out(index_) - beta_e_ * x.energy_out(o);
    last_ = solve_local(params_, mts_, noise_psd_, budget, net_export);
  }

  PriceReport report() const { return {last_.duals.mu, last_.duals.lambda}; }
  double cost() const { return last_.cost; }
  const IntraResult& last() const { return last_; }

 private:
  std::size_t index_;
  BaseStationParams params_;
  std::vector<MobileTerminal> mts_;
  double noise_psd_;
  double beta_e_;
  double beta_b_;
  IntraResult last_;
};

enum class Termination { kConverged, kStalledSigma, kMaxIters, kInfeasibleAtStart };

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kStalledSigma: return "stalled_sigma";
    case Termination::kMaxIters: return "max_iters";
    case Termination::kInfeasibleAtStart: return "infeasible_at_start";
  }
  return "converged";
}

struct TrajectoryPoint {
  ExchangeVector x;
  CostTuple costs;
  std::array<DualPrices, kNumBs> duals{};  // SI units
  // Descent rate available at this point, with lambda per bandwidth unit.
  double sigma = 0.0;
  double step = 0.0;   // step length that led here (0 for the start)
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  double rho = 1.0;
  double delta = 0.0;
  Branch branch = Branch::kNone;
  Termination reason = Termination::kConverged;

  // (C_1(0) - C_1(end)) / (C_2(0) - C_2(end)).
  double reduction_ratio() const {
    const auto& a = points.front().costs;
    const auto& b = points.back().costs;
    return (a.c1 - b.c1) / (a.c2 - b.c2);
  }
};

struct Algorithm1Options {
  double delta = 0.05;
  // Unset: proportional fairness, rho = C_1(0) / C_2(0).
  std::optional<double> rho;
  int max_iters = 1000;
  double eps_cond = 1e-6;
  double eps_sigma = 1e-12;
  // Bandwidth coordinates of the direction are expressed in this unit, so
  // lambda is a price per unit and w moves by delta * d_w units.
  double bandwidth_unit_hz = 1e6;
  double armijo = 1e-4;  // fraction of the predicted decrease a step must realize
};

inline Trajectory run_algorithm1(const Scenario& s, const Algorithm1Options& opt) {
  s.validate();
  if (!(opt.delta > 0.0)) throw DomainError("run_algorithm1: delta must be > 0");
  if (opt.rho && !(*opt.rho > 0.0)) throw DomainError("run_algorithm1: rho must be > 0");

  std::array<BaseStationAgent, kNumBs> agents = {BaseStationAgent(0, s),
                                                 BaseStationAgent(1, s)};
  const double beta_e = s.energy_coop_beta;
  const double unit = opt.bandwidth_unit_hz;

  // Only these four scalars cross between the BSs each iteration.
  auto exchange_prices = [&](const ExchangeVector& x) {
    std::array<DualPrices, kNumBs> d{};
    for (std::size_t i = 0; i < kNumBs; ++i) {
      agents[i].update(x);
      const auto rep = agents[i].report();
      d[i] = {rep.mu, rep.lambda, agents[i].last().duals.nu};
    }
    return d;
  };
  auto scaled = [&](std::array<DualPrices, kNumBs> d) {
    for (auto& p : d) p.lambda *= unit;
    return d;
  };
  auto costs_now = [&] { return CostTuple{agents[0].cost(), agents[1].cost()}; };

  Trajectory t;
  t.delta = opt.delta;
  ExchangeVector x{};
  auto duals = exchange_prices(x);
  CostTuple costs = costs_now();
  t.branch = improvement_conditions(duals, x, beta_e, opt.eps_cond);
  t.rho = opt.rho ? *opt.rho : (costs.c2 > 0.0 ? costs.c1 / costs.c2 : 1.0);
  t.points.push_back({x, costs, duals, sigma(scaled(duals), t.branch, beta_e), 0.0});
  if (t.branch == Branch::kNone) {
    t.reason = Termination::kInfeasibleAtStart;
    return t;
  }

  double step = opt.delta;
  const double min_step = opt.delta * std::ldexp(1.0, -40);
  t.reason = Termination::kMaxIters;
  for (int iter = 0; iter < opt.max_iters; ++iter) {
    const Branch now = improvement_conditions(duals, x, beta_e, opt.eps_cond);
    if (now != t.branch) {
      t.reason = Termination::kConverged;
      break;
    }
    const auto sd = scaled(duals);
    const double sg = sigma(sd, t.branch, beta_e);
    const double sigma_scale = sd[0].lambda * sd[1].mu + sd[1].lambda * sd[0].mu;
    if (sg >= -opt.eps_sigma * sigma_scale) {
      t.reason = Termination::kStalledSigma;
      break;
    }
    const Vec4 d = descent_direction(sd, t.branch, t.rho, beta_e);

    bool accepted = false;
    bool moved = false;
    while (step >= min_step) {
      ExchangeVector trial{std::max(x.e1 + step * d[0], 0.0),
                           std::max(x.e2 + step * d[1], 0.0),
                           std::max(x.w1 + step * d[2] * unit, 0.0),
                           std::max(x.w2 + step * d[3] * unit, 0.0)};
      if (trial == x) break;
      moved = true;
      std::array<DualPrices, kNumBs> trial_duals;
      try {
        trial_duals = exchange_prices(trial);
      } catch (const InfeasibleError&) {
        step *= 0.5;
        continue;
      }
      const CostTuple c = costs_now();
      const double tol = 1e-12 * std::max(1.0, costs.sum());
      // Sufficient decrease on the sum keeps the walk from chattering across
      // a kink, where rounding-level moves would otherwise pass.
      const double predicted = step * sg * (t.rho + 1.0);
      if (c.c1 <= costs.c1 + tol && c.c2 <= costs.c2 + tol &&
          c.sum() <= costs.sum() + opt.armijo * predicted) {
        x = trial;
        duals = trial_duals;
        costs = c;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Agents are left at the rejected trial; bring them back.
      duals = exchange_prices(x);
      t.reason = moved ? Termination::kStalledSigma : Termination::kConverged;
      break;
    }
    t.points.push_back({x, costs, duals, sigma(scaled(duals), t.branch, beta_e), step});
  }
  return t;
}

}  // namespace specshare

#endif  // SPECSHARE_PARTIAL_COOP_HPP_
