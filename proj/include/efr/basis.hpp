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
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "efr/errors.hpp"
#include "efr/grid.hpp"

namespace efr {

enum class BasisKind { fourier, bspline };

inline std::string to_string(BasisKind k) { return k == BasisKind::fourier ? "fourier" : "bspline"; }

inline BasisKind basis_kind_from_string(const std::string& s) {
  if (s == "fourier") return BasisKind::fourier;
  if (s == "bspline") return BasisKind::bspline;
  throw InvalidArgument("unknown basis kind '" + s + "'");
}

/// An ordered set of J basis functions sampled on a grid, orthonormal with
/// respect to the trapezoidal inner product.
struct BasisSystem {
  BasisKind kind;
  int J = 0;
  Grid grid;
  int order = 4;  // meaningful for bspline only
  std::vector<DiscretizedFunction> elements;
};

/// Fourier system: sqrt(2) sin(2 pi t), sqrt(2) cos(2 pi t),
/// sqrt(2) sin(4 pi t), sqrt(2) cos(4 pi t), ... truncated to J elements.
inline BasisSystem fourier_basis(int J, Grid grid) {
  if (J < 1) throw InvalidArgument("fourier_basis requires J >= 1");
  BasisSystem b{BasisKind::fourier, J, grid, 0, {}};
  b.elements.reserve(J);
  const double sqrt2 = std::numbers::sqrt2;
  for (int j = 0; j < J; ++j) {
    const double freq = 2.0 * std::numbers::pi * (j / 2 + 1);
    if (j % 2 == 0)
      b.elements.push_back(
          DiscretizedFunction::sample(grid, [&](double t) { return sqrt2 * std::sin(freq * t); }));
    else
      b.elements.push_back(
          DiscretizedFunction::sample(grid, [&](double t) { return sqrt2 * std::cos(freq * t); }));
  }
  return b;
}

namespace detail {

/// Cox-de Boor evaluation of the j-th B-spline of the given order on a
/// clamped uniform knot vector with J basis functions. t = 1 is treated as
/// belonging to the last span.
inline double bspline_value(int j, int order, int J, double t) {
  const int n_knots = J + order;
  auto knot = [&](int i) -> double {
    if (i < order) return 0.0;
    if (i >= n_knots - order) return 1.0;
    return static_cast<double>(i - order + 1) / (J - order + 1);
  };
  // Order-1 (piecewise constant) seeds, then the standard recursion.
  std::vector<double> n(order, 0.0);
  for (int r = 0; r < order; ++r) {
    const int i = j + r;
    const bool last = knot(i + 1) >= 1.0;
    n[r] = (t >= knot(i) && (t < knot(i + 1) || (last && t <= 1.0 && knot(i) < knot(i + 1)))) ? 1.0
                                                                                             : 0.0;
  }
  for (int k = 2; k <= order; ++k) {
    for (int r = 0; r + k <= order; ++r) {
      const int i = j + r;
      double a = 0.0, b = 0.0;
      const double d1 = knot(i + k - 1) - knot(i);
      const double d2 = knot(i + k) - knot(i + 1);
      if (d1 > 0.0) a = (t - knot(i)) / d1 * n[r];
      if (d2 > 0.0) b = (knot(i + k) - t) / d2 * n[r + 1];
      n[r] = a + b;
    }
  }
  return n[0];
}

}  // namespace detail

/// Raw (non-orthogonal) B-spline values sampled on the grid, one function
/// per entry. These satisfy the partition of unity; the orthonormal system
/// below is built from them.
inline std::vector<DiscretizedFunction> bspline_raw(int J, Grid grid, int order = 4) {
  if (order < 2) throw InvalidArgument("bspline order must be >= 2");
  if (J < order) throw InvalidArgument("bspline_basis requires J >= order");
  std::vector<DiscretizedFunction> raw;
  raw.reserve(J);
  for (int j = 0; j < J; ++j)
    raw.push_back(DiscretizedFunction::sample(
        grid, [&](double t) { return detail::bspline_value(j, order, J, t); }));
  return raw;
}

/// B-spline system on a clamped uniform knot vector, orthonormalized by
/// modified Gram-Schmidt (in knot order) under the trapezoidal inner
/// product. Deterministic: identical inputs give bit-identical bases.
inline BasisSystem bspline_basis(int J, Grid grid, int order = 4) {
  BasisSystem b{BasisKind::bspline, J, grid, order, bspline_raw(J, grid, order)};
  for (int j = 0; j < J; ++j) {
    auto& ej = b.elements[j];
    for (int p = 0; p < j; ++p) {
      const double r = inner_product(b.elements[p], ej);
      for (int k = 0; k < grid.n_points; ++k) ej.values[k] -= r * b.elements[p].values[k];
    }
    const double nrm = l2_norm(ej);
    if (!(nrm > 1e-10))
      throw InvalidArgument("bspline basis is numerically dependent on this grid");
    for (double& v : ej.values) v /= nrm;
  }
  return b;
}

/// Linear combination sum_j coeffs[j] * b_j.
inline DiscretizedFunction expand(const BasisSystem& b, std::span<const double> coeffs) {
  if (static_cast<int>(coeffs.size()) != b.J)
    throw InvalidArgument("coefficient count " + std::to_string(coeffs.size()) +
                          " does not match basis size " + std::to_string(b.J));
  DiscretizedFunction out = DiscretizedFunction::zero(b.grid);
  for (int j = 0; j < b.J; ++j)
    for (int k = 0; k < b.grid.n_points; ++k) out.values[k] += coeffs[j] * b.elements[j].values[k];
  return out;
}

/// Coefficients of the orthogonal projection of f onto the basis span.
inline std::vector<double> project(const BasisSystem& b, const DiscretizedFunction& f) {
  detail::require_same_grid(b.grid, f.grid);
  std::vector<double> c(b.J);
  for (int j = 0; j < b.J; ++j) c[j] = inner_product(f, b.elements[j]);
  return c;
}

}  // namespace efr
