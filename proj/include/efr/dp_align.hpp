/*
 * efr: elastic functional regression for scalar-on-function problems
 *
 * Copyright 2026 The efr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "efr/errors.hpp"
#include "efr/grid.hpp"
#include "efr/warping.hpp"

namespace efr {

/// Search-space knobs for dynamic-programming alignment.
///
/// The warping is restricted to piecewise-linear paths through the n x n
/// lattice of sample points, with segment steps (dk, dl) taken from the set
/// of coprime pairs with 1 <= dk, dl <= max_step. Bounded steps keep local
/// slopes in [1/max_step, max_step] and rule out degenerate near-vertical
/// segments. lattice_stride > 1 thins the set of breakpoint columns (the
/// segment integrals still use every grid point).
struct DpOptions {
  int max_step = 7;
  int lattice_stride = 1;
};

struct DpResult {
  Warping warping;
  double objective = 0.0;
  /// True when the moving function is identically zero, in which case any
  /// warping is optimal and the identity is returned.
  bool degenerate = false;
};

namespace detail {

struct DpStep {
  int dk, dl;
};

inline std::vector<DpStep> dp_step_set(int max_step) {
  if (max_step < 1) throw InvalidArgument("max_step must be >= 1");
  std::vector<DpStep> steps;
  for (int dk = 1; dk <= max_step; ++dk)
    for (int dl = 1; dl <= max_step; ++dl)
      if (std::gcd(dk, dl) == 1) steps.push_back({dk, dl});
  return steps;
}

/// Cost of the straight lattice segment from column k0 (height l0) to
/// column k1 (height l1), in grid-index units: the trapezoid approximation
/// of the integral of target(t) moving(gamma(t)) sqrt(gamma') over the
/// segment, with gamma linear. Shared between the aligner and the
/// brute-force oracle used in the tests.
inline double dp_segment_cost(const std::vector<double>& target, const std::vector<double>& moving,
                              int n, double spacing, int k0, int l0, int k1, int l1) {
  const int dk = k1 - k0;
  const double slope = static_cast<double>(l1 - l0) / dk;
  const double sqrt_slope = std::sqrt(slope);
  double s = 0.5 * (target[k0] * moving[l0] + target[k1] * moving[l1]);
  double y = static_cast<double>(l0);
  for (int j = 1; j < dk; ++j) {
    y += slope;
    int il = static_cast<int>(y);
    if (il > n - 2) il = n - 2;
    const double frac = y - il;
    s += target[k0 + j] * ((1.0 - frac) * moving[il] + frac * moving[il + 1]);
  }
  return s * spacing * sqrt_slope;
}

}  // namespace detail

/// Approximately maximize  integral of target(t) * moving(gamma(t)) * sqrt(gamma'(t))
/// over the warping group, by dynamic programming over monotone lattice
/// paths. Ties in the objective (within 1e-12 relative) are broken toward
/// the path with fewer cumulative slope deviations, which biases
/// self-alignment toward the identity.
inline DpResult dp_align_detail(const DiscretizedFunction& target,
                                const DiscretizedFunction& moving, const DpOptions& opts = {}) {
  detail::require_same_grid(target.grid, moving.grid);
  const int n = target.size();
  const double h = target.grid.spacing();

  bool all_zero = true;
  for (double v : moving.values)
    if (v != 0.0) {
      all_zero = false;
      break;
    }
  if (all_zero) return DpResult{identity_warping(target.grid), 0.0, true};

  // Breakpoint columns: every lattice_stride-th grid index, plus the end.
  const int stride = std::max(1, opts.lattice_stride);
  std::vector<int> cols;
  for (int k = 0; k < n - 1; k += stride) cols.push_back(k);
  cols.push_back(n - 1);
  const int m = static_cast<int>(cols.size()) - 1;  // nodes are (i, j), 0..m each axis

  const auto steps = detail::dp_step_set(opts.max_step);
  const int S = opts.max_step;

  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> best(static_cast<std::size_t>(m + 1) * (m + 1), neg_inf);
  std::vector<int32_t> dev(static_cast<std::size_t>(m + 1) * (m + 1), 0);
  std::vector<int16_t> parent(static_cast<std::size_t>(m + 1) * (m + 1), -1);
  auto at = [m](int i, int j) { return static_cast<std::size_t>(i) * (m + 1) + j; };

  best[at(0, 0)] = 0.0;
  for (int i = 1; i <= m; ++i) {
    // Reachability band: slopes within [1/S, S] from both ends.
    const int jlo = std::max({1, (i + S - 1) / S, m - S * (m - i)});
    const int jhi = std::min({m, S * i, m - (m - i + S - 1) / S});
    for (int j = jlo; j <= jhi; ++j) {
      double b = neg_inf;
      int32_t bd = 0;
      int16_t arg = -1;
      for (std::size_t s = 0; s < steps.size(); ++s) {
        const int pi = i - steps[s].dk, pj = j - steps[s].dl;
        if (pi < 0 || pj < 0) continue;
        const double prev = best[at(pi, pj)];
        if (prev == neg_inf) continue;
        const double cand =
            prev + detail::dp_segment_cost(target.values, moving.values, n, h, cols[pi], cols[pj],
                                           cols[i], cols[j]);
        const int32_t cdev = dev[at(pi, pj)] + std::abs(steps[s].dl - steps[s].dk);
        const double tol = (arg < 0) ? 0.0 : 1e-12 * (1.0 + std::abs(b));
        if (arg < 0 || cand > b + tol || (cand >= b - tol && cdev < bd)) {
          b = cand;
          bd = cdev;
          arg = static_cast<int16_t>(s);
        }
      }
      best[at(i, j)] = b;
      dev[at(i, j)] = bd;
      parent[at(i, j)] = arg;
    }
  }

  // Backtrack the node path, then fill gamma at every grid column by
  // sampling the linear segments.
  std::vector<std::pair<int, int>> path;  // grid-index pairs (k, l)
  {
    int i = m, j = m;
    path.emplace_back(cols[i], cols[j]);
    while (i != 0 || j != 0) {
      const int16_t s = parent[at(i, j)];
      if (s < 0) throw Error("dp_align: no admissible path (internal error)");
      i -= steps[s].dk;
      j -= steps[s].dl;
      path.emplace_back(cols[i], cols[j]);
    }
  }
  std::vector<double> gamma(n);
  for (std::size_t p = path.size() - 1; p > 0; --p) {
    const auto [k0, l0] = path[p];
    const auto [k1, l1] = path[p - 1];
    const double slope = static_cast<double>(l1 - l0) / (k1 - k0);
    gamma[k0] = target.grid.point(l0);
    for (int k = k0 + 1; k < k1; ++k) gamma[k] = (l0 + slope * (k - k0)) * h;
  }
  gamma[n - 1] = 1.0;
  gamma[0] = 0.0;

  return DpResult{Warping::from_values(target.grid, std::move(gamma)), best[at(m, m)], false};
}

/// Warping that approximately maximizes <target, norm_action(moving, gamma)>.
inline Warping dp_align(const DiscretizedFunction& target, const DiscretizedFunction& moving,
                        const DpOptions& opts = {}) {
  return dp_align_detail(target, moving, opts).warping;
}

}  // namespace efr
