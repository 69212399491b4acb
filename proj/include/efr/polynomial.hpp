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
#include <span>
#include <vector>

#include "efr/errors.hpp"
#include "efr/linalg.hpp"

namespace efr {

/// The single-index link function h, restricted to polynomials of degree
/// 1 to 3. Coefficients are stored highest degree first.
struct IndexPolynomial {
  int degree = 1;
  std::vector<double> coefficients;  // size degree + 1

  static IndexPolynomial identity() { return IndexPolynomial{1, {1.0, 0.0}}; }

  static IndexPolynomial make(int degree, std::vector<double> coefficients) {
    if (degree < 1 || degree > 3)
      throw InvalidArgument("index polynomial degree must be 1, 2 or 3");
    if (static_cast<int>(coefficients.size()) != degree + 1)
      throw InvalidArgument("index polynomial needs degree+1 coefficients");
    for (double c : coefficients)
      if (!std::isfinite(c)) throw InvalidArgument("index polynomial coefficients must be finite");
    return IndexPolynomial{degree, std::move(coefficients)};
  }

  double operator()(double x) const {
    double y = 0.0;
    for (double c : coefficients) y = y * x + c;
    return y;
  }

  /// h(-x): flips the sign of odd-power coefficients. Used when the sign of
  /// the regression coefficient function is canonicalized.
  IndexPolynomial flipped_argument() const {
    IndexPolynomial p = *this;
    for (int k = 0; k <= degree; ++k)
      if ((degree - k) % 2 == 1) p.coefficients[k] = -p.coefficients[k];
    return p;
  }
};

/// Least-squares polynomial of the given degree through (x_i, y_i), solved
/// via the normal equations of the Vandermonde system.
inline IndexPolynomial fit_index_h(std::span<const double> xs, std::span<const double> ys,
                                   int degree) {
  if (degree < 1 || degree > 3) throw InvalidArgument("index polynomial degree must be 1, 2 or 3");
  if (xs.size() != ys.size()) throw InvalidArgument("fit_index_h: lengths differ");
  const int k = degree + 1;
  const int n = static_cast<int>(xs.size());
  if (n < k) throw InvalidArgument("fit_index_h: need at least degree+1 points");

  std::vector<double> design(static_cast<std::size_t>(n) * k);
  for (int i = 0; i < n; ++i) {
    double p = 1.0;
    for (int j = k - 1; j >= 0; --j) {
      design[static_cast<std::size_t>(i) * k + j] = p;
      p *= xs[i];
    }
  }
  std::vector<double> coeffs;
  std::vector<double> y(ys.begin(), ys.end());
  if (!detail::least_squares(design, y, n, k, coeffs))
    throw DegenerateFit("fit_index_h: rank-deficient Vandermonde system (indices too clustered)");
  return IndexPolynomial{degree, std::move(coeffs)};
}

}  // namespace efr
