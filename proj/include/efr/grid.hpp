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
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "efr/errors.hpp"

namespace efr {

/// A uniform grid of n >= 3 points on [0,1]: t_k = k/(n-1).
struct Grid {
  int n_points = 0;

  static Grid of_size(int n) {
    if (n < 3) throw InvalidArgument("Grid requires at least 3 points, got " + std::to_string(n));
    return Grid{n};
  }

  double spacing() const { return 1.0 / (n_points - 1); }
  double point(int k) const { return static_cast<double>(k) / (n_points - 1); }

  std::vector<double> points() const {
    std::vector<double> t(n_points);
    for (int k = 0; k < n_points; ++k) t[k] = point(k);
    return t;
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// A real-valued function sampled on a uniform grid over [0,1].
/// The universal carrier for predictors, SRVFs, regression coefficients
/// and warping derivatives. Values are immutable by convention; all
/// operations below return fresh objects.
struct DiscretizedFunction {
  Grid grid;
  std::vector<double> values;

  static DiscretizedFunction from_values(Grid grid, std::vector<double> values) {
    if (static_cast<int>(values.size()) != grid.n_points)
      throw InvalidArgument("value count " + std::to_string(values.size()) +
                            " does not match grid size " + std::to_string(grid.n_points));
    for (double v : values)
      if (!std::isfinite(v)) throw InvalidArgument("function values must be finite");
    return DiscretizedFunction{grid, std::move(values)};
  }

  /// Sample a callable f: double -> double on the grid.
  template <class F>
  static DiscretizedFunction sample(Grid grid, F&& f) {
    std::vector<double> v(grid.n_points);
    for (int k = 0; k < grid.n_points; ++k) v[k] = f(grid.point(k));
    return from_values(grid, std::move(v));
  }

  static DiscretizedFunction zero(Grid grid) {
    return DiscretizedFunction{grid, std::vector<double>(grid.n_points, 0.0)};
  }

  int size() const { return grid.n_points; }
};

namespace detail {

inline void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b))
    throw GridMismatch("grid sizes differ: " + std::to_string(a.n_points) + " vs " +
                       std::to_string(b.n_points));
}

/// Trapezoidal weights are 1/2 at the ends, 1 inside, all scaled by the spacing.
inline double trapezoid(std::span<const double> v, double spacing) {
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t k = 1; k + 1 < v.size(); ++k) s += v[k];
  return s * spacing;
}

}  // namespace detail

/// Trapezoidal approximation of the L2 inner product on [0,1].
inline double inner_product(const DiscretizedFunction& f, const DiscretizedFunction& g) {
  detail::require_same_grid(f.grid, g.grid);
  const int n = f.size();
  double s = 0.5 * (f.values[0] * g.values[0] + f.values[n - 1] * g.values[n - 1]);
  for (int k = 1; k + 1 < n; ++k) s += f.values[k] * g.values[k];
  return s * f.grid.spacing();
}

/// L2 norm, defined as sqrt(inner_product(f,f)).
inline double l2_norm(const DiscretizedFunction& f) { return std::sqrt(inner_product(f, f)); }

/// Second-order finite differences: central in the interior, one-sided
/// three-point stencils at the boundaries. Exact for quadratics in the
/// interior and for linear functions everywhere.
inline DiscretizedFunction derivative(const DiscretizedFunction& f) {
  const int n = f.size();
  const double h = f.grid.spacing();
  const auto& v = f.values;
  std::vector<double> d(n);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  for (int k = 1; k + 1 < n; ++k) d[k] = (v[k + 1] - v[k - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return DiscretizedFunction{f.grid, std::move(d)};
}

namespace detail {

/// Piecewise-linear interpolation at a single point of the unit interval,
/// in index coordinates. Queries that land within 1e-9 of a grid node (in
/// index units) snap to the node so that node queries reproduce stored
/// values exactly.
inline double lerp_at(const std::vector<double>& values, int n, double t) {
  double x = t * (n - 1);
  double r = std::round(x);
  if (std::abs(x - r) < 1e-9) {
    int k = static_cast<int>(r);
    if (k >= 0 && k < n) return values[k];
  }
  int k = static_cast<int>(std::floor(x));
  if (k < 0) k = 0;
  if (k > n - 2) k = n - 2;
  double frac = x - k;
  return (1.0 - frac) * values[k] + frac * values[k + 1];
}

}  // namespace detail

/// Piecewise-linear interpolation of f at one point t in [0,1].
inline double resample_at(const DiscretizedFunction& f, double t) {
  if (t < -1e-12 || t > 1.0 + 1e-12)
    throw DomainError("query point " + std::to_string(t) + " outside [0,1]");
  t = std::min(std::max(t, 0.0), 1.0);
  return detail::lerp_at(f.values, f.size(), t);
}

/// Piecewise-linear interpolation of f at each query point. Queries need
/// not be sorted; each must lie in [0,1]. Exact at grid nodes.
inline std::vector<double> resample(const DiscretizedFunction& f, std::span<const double> at) {
  std::vector<double> out;
  out.reserve(at.size());
  for (double t : at) out.push_back(resample_at(f, t));
  return out;
}

// Value-semantic arithmetic, used throughout the model code.

inline DiscretizedFunction operator+(const DiscretizedFunction& f, const DiscretizedFunction& g) {
  detail::require_same_grid(f.grid, g.grid);
  DiscretizedFunction out = f;
  for (int k = 0; k < out.size(); ++k) out.values[k] += g.values[k];
  return out;
}

inline DiscretizedFunction operator-(const DiscretizedFunction& f, const DiscretizedFunction& g) {
  detail::require_same_grid(f.grid, g.grid);
  DiscretizedFunction out = f;
  for (int k = 0; k < out.size(); ++k) out.values[k] -= g.values[k];
  return out;
}

inline DiscretizedFunction operator*(double a, const DiscretizedFunction& f) {
  DiscretizedFunction out = f;
  for (double& v : out.values) v *= a;
  return out;
}

/// Pointwise mean of a non-empty family sharing one grid.
inline DiscretizedFunction mean_function(std::span<const DiscretizedFunction> fs) {
  if (fs.empty()) throw EmptyList("mean_function requires a non-empty list");
  DiscretizedFunction out = DiscretizedFunction::zero(fs.front().grid);
  for (const auto& f : fs) {
    detail::require_same_grid(out.grid, f.grid);
    for (int k = 0; k < out.size(); ++k) out.values[k] += f.values[k];
  }
  const double inv = 1.0 / static_cast<double>(fs.size());
  for (double& v : out.values) v *= inv;
  return out;
}

}  // namespace efr
