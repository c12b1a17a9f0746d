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

// Principal-branch Lambert W and the water-level -> bandwidth map built on it.

#ifndef SPECSHARE_SPECIAL_FN_HPP_
#define SPECSHARE_SPECIAL_FN_HPP_

#include <cmath>
#include <limits>
#include <numbers>

#include "specshare/domain.hpp"

namespace specshare {

// Bandwidth water level nu (W per Hz).
struct WaterLevel {
  double nu = 0.0;

  explicit WaterLevel(double v) : nu(v) {
    if (!(v >= 0.0)) throw DomainError("water level must be >= 0");
  }
};

namespace detail {

inline constexpr double kInvE = 0.36787944117144233;  // exp(-1)
inline constexpr double kInvELow = -1.2428753672788363e-17;  // exp(-1) - kInvE

inline double lambert_w0_initial_guess(double z) {
  if (z < -0.25) {
    // Branch-point series in p = sqrt(2 (e z + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * z + 1.0)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0)));
  }
  if (z < 0.25) return z * (1.0 + z * (-1.0 + z * (1.5 - z * 8.0 / 3.0)));
  if (z < 20.0) {
    // Winitzki's approximation.
    const double l = std::log1p(z);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  const double l1 = std::log(z);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

// e^y (y - 1) + 1 without cancellation for small y. This is the
// normalized water level g nu / n0 that makes r ln2 / y optimal.
inline double waterlevel_of_exponent(double y) {
  if (std::fabs(y) < 0.5) {
    // sum_{n>=2} (n-1) y^n / n!
    double term = y * y / 2.0;  // y^n / n! for n = 2
    double sum = term;
    for (int n = 3; n < 40; ++n) {
      term *= y / n;
      const double add = (n - 1) * term;
      sum += add;
      if (std::fabs(add) <= 1e-18 * std::fabs(sum)) break;
    }
    return sum;
  }
  return y * std::exp(y) - std::expm1(y);
}

}  // namespace detail

// Principal branch W0: returns w >= -1 with w e^w = z, for z >= -1/e.
inline double lambert_w0(double z) {
  constexpr double kBranch = -detail::kInvE;
  if (std::isnan(z)) throw DomainError("lambert_w0: NaN argument");
  if (z < kBranch) throw DomainError("lambert_w0: argument below -1/e");
  if (z - kBranch < 1e-8) {
    // Series about the branch point in p = sqrt(2 (e z + 1)); the iteration
    // below loses accuracy where the derivative vanishes. The offset from
    // -1/e carries the rounding of the constant.
    const double offset = (z - kBranch) + detail::kInvELow;
    if (offset <= 0.0) return -1.0;
    const double p = std::sqrt(2.0 * std::numbers::e * offset);
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0)));
  }
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return z;

  double w = detail::lambert_w0_initial_guess(z);
  for (int iter = 0; iter < 50; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (w < -1.0) w = -1.0 + 1e-300;
    if (std::fabs(step) <= 4.0 * std::numeric_limits<double>::epsilon() *
                               (1.0 + std::fabs(w)))
      break;
  }
  return w;
}

// Unique b > 0 minimizing nu * b + p(b) where p(b) = (b n0 / g)(2^{r/b} - 1)
// is the power needed to deliver rate r on bandwidth b. Closed form:
//   b = ln2 r / (W0((nu g / n0 - 1) / e) + 1).
// Strictly decreasing in nu; +inf at nu = 0.
inline double bandwidth_at_waterlevel(WaterLevel level, double rate_bps,
                                      double gain, double noise_psd) {
  if (!(rate_bps > 0.0) || !(gain > 0.0) || !(noise_psd > 0.0))
    throw DomainError("bandwidth_at_waterlevel: r, g, n0 must be positive");
  const double nu = level.nu;
  if (nu == 0.0) return std::numeric_limits<double>::infinity();
  const double q = nu * gain / noise_psd;
  if (!std::isfinite(q)) return 0.0;

  // y = r ln2 / b solves waterlevel_of_exponent(y) = q.
  double y;
  if (q >= 0.05) {
    y = lambert_w0((q - 1.0) / std::numbers::e) + 1.0;
  } else {
    y = std::sqrt(2.0 * q);
  }
  // Newton polish on the cancellation-free form.
  for (int iter = 0; iter < 60; ++iter) {
    const double phi = detail::waterlevel_of_exponent(y);
    const double dphi = y * std::exp(y);
    if (!std::isfinite(phi) || !std::isfinite(dphi) || dphi == 0.0) break;
    const double step = (phi - q) / dphi;
    const double next = y - step;
    y = next > 0.0 ? next : 0.5 * y;
    if (std::fabs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * y)
      break;
  }
  if (!(y > 0.0)) throw DomainError("bandwidth_at_waterlevel: no positive root");
  return std::numbers::ln2 * rate_bps / y;
}

}  // namespace specshare

#endif  // SPECSHARE_SPECIAL_FN_HPP_
