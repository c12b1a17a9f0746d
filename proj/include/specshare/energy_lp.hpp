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

// Joint energy purchase / transfer LP for two BSs with fixed loads:
//
//   min  sum_i gamma_i (aE_i E_i + aG_i G_i)
//   s.t. D_i = E_i + G_i + beta_E e_other - e_i,
//        0 <= E_i <= cap_i,  G_i >= 0,  e_i >= 0.
//
// Six variables and two equality rows, so a vertex has two basic variables
// and four at a bound. All vertices are enumerated; there are at most 60.

#ifndef SPECSHARE_ENERGY_LP_HPP_
#define SPECSHARE_ENERGY_LP_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "specshare/domain.hpp"

namespace specshare {

struct EnergyLpInstance {
  std::array<double, 2> load_w{};  // D_i, clamped at 0
  std::array<double, 2> gamma{1.0, 1.0};
  std::array<double, 2> price_renewable{};
  std::array<double, 2> price_grid{};
  std::array<double, 2> cap_w{};
  double beta_e = 0.0;
};

struct EnergyLpSolution {
  std::array<double, 2> renewable_w{};
  std::array<double, 2> grid_w{};
  std::array<double, 2> export_w{};  // e_1, e_2
  double objective = 0.0;
};

namespace detail {

inline double energy_lp_objective(const EnergyLpInstance& in,
                                  const std::array<double, 6>& x) {
  return in.gamma[0] * (in.price_renewable[0] * x[0] + in.price_grid[0] * x[2]) +
         in.gamma[1] * (in.price_renewable[1] * x[1] + in.price_grid[1] * x[3]);
}

}  // namespace detail

inline EnergyLpSolution solve_energy_lp(const EnergyLpInstance& in) {
  // Variable order: E1, E2, G1, G2, e1, e2.
  const double be = in.beta_e;
  const std::array<std::array<double, 6>, 2> a = {{
      {1.0, 0.0, 1.0, 0.0, -1.0, be},
      {0.0, 1.0, 0.0, 1.0, be, -1.0},
  }};
  const std::array<double, 2> d = {std::max(in.load_w[0], 0.0),
                                   std::max(in.load_w[1], 0.0)};
  const std::array<double, 6> upper = {in.cap_w[0], in.cap_w[1],
                                       std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity()};
  const double scale = std::max({1.0, d[0], d[1], in.cap_w[0], in.cap_w[1]});
  const double feas_tol = 1e-12 * scale;

  std::array<double, 6> best{};
  double best_obj = std::numeric_limits<double>::infinity();
  bool best_complementary = false;

  for (int p = 0; p < 6; ++p) {
    for (int q = p + 1; q < 6; ++q) {
      const double det = a[0][p] * a[1][q] - a[0][q] * a[1][p];
      if (std::fabs(det) < 1e-14) continue;
      // Nonbasic E variables sit at 0 or at the cap; the rest at 0.
      for (int mask = 0; mask < 4; ++mask) {
        std::array<double, 6> x{};
        bool duplicate = false;
        for (int j = 0; j < 2; ++j) {
          const bool at_cap = (mask >> j) & 1;
          if (j == p || j == q) {
            if (at_cap) duplicate = true;
            continue;
          }
          x[j] = at_cap ? upper[j] : 0.0;
        }
        if (duplicate) continue;
        std::array<double, 2> rhs = d;
        for (int r = 0; r < 2; ++r)
          for (int j = 0; j < 6; ++j)
            if (j != p && j != q) rhs[r] -= a[r][j] * x[j];
        x[p] = (rhs[0] * a[1][q] - rhs[1] * a[0][q]) / det;
        x[q] = (a[0][p] * rhs[1] - a[1][p] * rhs[0]) / det;

        bool feasible = true;
        for (int j = 0; j < 6; ++j) {
          if (x[j] < -feas_tol || x[j] > upper[j] + feas_tol) feasible = false;
          x[j] = std::clamp(x[j], 0.0, upper[j]);
        }
        if (!feasible) continue;

        const double obj = detail::energy_lp_objective(in, x);
        const bool complementary = x[4] == 0.0 || x[5] == 0.0;
        const double tie = 1e-12 * std::max(1.0, std::fabs(best_obj));
        if (obj < best_obj - tie ||
            (obj <= best_obj + tie && complementary && !best_complementary)) {
          best = x;
          best_obj = obj;
          best_complementary = complementary;
        }
      }
    }
  }

  // Both transfers positive can only tie at beta_E = 1; drop the common part.
  const double common = std::min(best[4], best[5]);
  best[4] -= common;
  best[5] -= common;
  // Recompute grid purchases so the balance rows hold exactly.
  for (int i = 0; i < 2; ++i) {
    const double need = d[i] + best[4 + i] - be * best[4 + (1 - i)];
    best[i] = std::clamp(std::min(best[i], need), 0.0, upper[i]);
    best[2 + i] = std::max(need - best[i], 0.0);
  }

  EnergyLpSolution sol;
  sol.renewable_w = {best[0], best[1]};
  sol.grid_w = {best[2], best[3]};
  sol.export_w = {best[4], best[5]};
  sol.objective = detail::energy_lp_objective(in, best);
  return sol;
}

}  // namespace specshare

#endif  // SPECSHARE_ENERGY_LP_HPP_
