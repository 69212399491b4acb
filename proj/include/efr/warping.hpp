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

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "efr/errors.hpp"
#include "efr/grid.hpp"

namespace efr {

/// A boundary-preserving, strictly increasing reparameterization of [0,1],
/// stored as its values at the grid points. gamma(0) = 0 and gamma(1) = 1
/// hold exactly.
struct Warping {
  Grid grid;
  std::vector<double> values;

  static Warping from_values(Grid grid, std::vector<double> values) {
    if (static_cast<int>(values.size()) != grid.n_points)
      throw InvalidArgument("warping value count does not match grid size");
    if (values.front() != 0.0 || values.back() != 1.0)
      throw InvalidArgument("warping must satisfy gamma(0)=0 and gamma(1)=1 exactly");
    for (std::size_t k = 0; k + 1 < values.size(); ++k)
      if (!(values[k + 1] > values[k]))
        throw InvalidArgument("warping values must be strictly increasing");
    return Warping{grid, std::move(values)};
  }

  int size() const { return grid.n_points; }

  DiscretizedFunction as_function() const { return DiscretizedFunction{grid, values}; }
};

inline Warping identity_warping(Grid grid) {
  return Warping{grid, grid.points()};
}

/// Square-root velocity function q = sign(f') sqrt(|f'|).
inline DiscretizedFunction srvf(const DiscretizedFunction& f) {
  DiscretizedFunction d = derivative(f);
  for (double& v : d.values) {
    double s = (v > 0.0) - (v < 0.0);
    v = s * std::sqrt(std::abs(v));
  }
  return d;
}

namespace detail {

/// Warping derivative by the same finite differences used everywhere,
/// clamped below at 1e-8 so square roots stay real under interpolation
/// round-off.
inline std::vector<double> clamped_warp_derivative(const Warping& g) {
  DiscretizedFunction d = derivative(g.as_function());
  for (double& v : d.values) v = std::max(v, 1e-8);
  return std::move(d.values);
}

}  // namespace detail

/// Value-preserving action (f o gamma): shifts features in time, keeps heights.
inline DiscretizedFunction value_action(const DiscretizedFunction& f, const Warping& g) {
  detail::require_same_grid(f.grid, g.grid);
  return DiscretizedFunction{f.grid, resample(f, g.values)};
}

/// Norm-preserving action (f o gamma) sqrt(gamma'): the group action under
/// which the L2 norm of f is invariant. This is the action used inside the
/// elastic regression model.
inline DiscretizedFunction norm_action(const DiscretizedFunction& f, const Warping& g) {
  detail::require_same_grid(f.grid, g.grid);
  std::vector<double> out = resample(f, g.values);
  std::vector<double> gd = detail::clamped_warp_derivative(g);
  for (int k = 0; k < f.size(); ++k) out[k] *= std::sqrt(gd[k]);
  return DiscretizedFunction{f.grid, std::move(out)};
}

/// Area-preserving action (f o gamma) gamma': keeps the integral of f.
inline DiscretizedFunction area_action(const DiscretizedFunction& f, const Warping& g) {
  detail::require_same_grid(f.grid, g.grid);
  std::vector<double> out = resample(f, g.values);
  DiscretizedFunction gd = derivative(g.as_function());
  for (int k = 0; k < f.size(); ++k) out[k] *= gd.values[k];
  return DiscretizedFunction{f.grid, std::move(out)};
}

/// Composition (g1 o g2)(t_k), evaluated by piecewise-linear interpolation.
inline Warping compose(const Warping& g1, const Warping& g2) {
  detail::require_same_grid(g1.grid, g2.grid);
  std::vector<double> v = resample(g1.as_function(), g2.values);
  v.front() = 0.0;
  v.back() = 1.0;
  return Warping::from_values(g1.grid, std::move(v));
}

/// Numerical inverse: swap the (t, gamma(t)) pairs and re-interpolate onto
/// the grid. Monotone and boundary-preserving by construction.
inline Warping invert(const Warping& g) {
  const int n = g.size();
  const auto& y = g.values;
  std::vector<double> v(n);
  v[0] = 0.0;
  v[n - 1] = 1.0;
  int seg = 0;
  for (int k = 1; k + 1 < n; ++k) {
    const double q = g.grid.point(k);
    while (seg + 2 < n && y[seg + 1] < q) ++seg;
    const double t0 = g.grid.point(seg), t1 = g.grid.point(seg + 1);
    v[k] = t0 + (q - y[seg]) / (y[seg + 1] - y[seg]) * (t1 - t0);
  }
  return Warping::from_values(g.grid, std::move(v));
}

/// Pointwise arithmetic mean of warpings; increasing and boundary-preserving
/// since each input is.
inline Warping mean_warping(std::span<const Warping> gs) {
  if (gs.empty()) throw EmptyList("mean_warping requires a non-empty list");
  const Grid grid = gs.front().grid;
  std::vector<double> v(grid.n_points, 0.0);
  for (const auto& g : gs) {
    detail::require_same_grid(grid, g.grid);
    for (int k = 0; k < grid.n_points; ++k) v[k] += g.values[k];
  }
  const double inv = 1.0 / static_cast<double>(gs.size());
  for (double& x : v) x *= inv;
  v.front() = 0.0;
  v.back() = 1.0;
  return Warping::from_values(grid, std::move(v));
}

/// Distance of a warping from the identity: || sqrt(gamma') - 1 ||.
inline double phase_distance(const Warping& g) {
  DiscretizedFunction d = derivative(g.as_function());
  for (double& v : d.values) v = std::sqrt(std::max(v, 0.0)) - 1.0;
  return l2_norm(d);
}

/// Largest pointwise deviation from the identity warping.
inline double sup_distance_to_identity(const Warping& g) {
  double m = 0.0;
  for (int k = 0; k < g.size(); ++k) m = std::max(m, std::abs(g.values[k] - g.grid.point(k)));
  return m;
}

}  // namespace efr
