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
#include <vector>

namespace efr::detail {

/// Solve the symmetric positive definite system A x = b in place by
/// Cholesky factorization. A is row-major k x k. Returns false when a pivot
/// falls below rel_tol times the largest diagonal entry, which callers map
/// to their own error types. The systems in this library are tiny (normal
/// equations with at most a few dozen unknowns), so no pivoting is needed.
inline bool cholesky_solve(std::vector<double> a, std::vector<double> b, int k,
                           std::vector<double>& x, double rel_tol = 1e-12) {
  double max_diag = 0.0;
  for (int i = 0; i < k; ++i) max_diag = std::max(max_diag, std::abs(a[i * k + i]));
  if (max_diag <= 0.0) return false;
  for (int j = 0; j < k; ++j) {
    double d = a[j * k + j];
    for (int p = 0; p < j; ++p) d -= a[j * k + p] * a[j * k + p];
    if (!(d > rel_tol * max_diag)) return false;
    d = std::sqrt(d);
    a[j * k + j] = d;
    for (int i = j + 1; i < k; ++i) {
      double s = a[i * k + j];
      for (int p = 0; p < j; ++p) s -= a[i * k + p] * a[j * k + p];
      a[i * k + j] = s / d;
    }
  }
  // Forward then backward substitution.
  for (int i = 0; i < k; ++i) {
    double s = b[i];
    for (int p = 0; p < i; ++p) s -= a[i * k + p] * b[p];
    b[i] = s / a[i * k + i];
  }
  x.assign(k, 0.0);
  for (int i = k - 1; i >= 0; --i) {
    double s = b[i];
    for (int p = i + 1; p < k; ++p) s -= a[p * k + i] * x[p];
    x[i] = s / a[i * k + i];
  }
  return true;
}

/// Least squares via normal equations: minimize ||X c - y|| for a row-major
/// n x k design. Returns false on a singular Gram matrix.
inline bool least_squares(const std::vector<double>& design, const std::vector<double>& y, int n,
                          int k, std::vector<double>& coeffs, double rel_tol = 1e-12) {
  std::vector<double> gram(static_cast<std::size_t>(k) * k, 0.0);
  std::vector<double> rhs(k, 0.0);
  for (int i = 0; i < n; ++i) {
    const double* row = design.data() + static_cast<std::size_t>(i) * k;
    for (int a = 0; a < k; ++a) {
      rhs[a] += row[a] * y[i];
      for (int b = a; b < k; ++b) gram[a * k + b] += row[a] * row[b];
    }
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < a; ++b) gram[a * k + b] = gram[b * k + a];
  return cholesky_solve(std::move(gram), std::move(rhs), k, coeffs, rel_tol);
}

}  // namespace efr::detail
