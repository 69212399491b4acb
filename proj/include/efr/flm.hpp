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

#include <cstddef>
#include <vector>

#include "efr/basis.hpp"
#include "efr/dataset.hpp"
#include "efr/errors.hpp"
#include "efr/linalg.hpp"

namespace efr {

/// Functional linear model y = alpha + <beta, f> with beta expanded in an
/// orthonormal basis.
struct FlmModel {
  BasisSystem basis;
  double alpha = 0.0;
  std::vector<double> c;

  DiscretizedFunction beta() const { return expand(basis, c); }
};

/// Ordinary least squares of the responses on [1, project(f_i)].
inline FlmModel fit_flm(const Dataset& data, const BasisSystem& basis) {
  detail::require_same_grid(data.grid(), basis.grid);
  const int n = data.size();
  const int J = basis.J;
  if (n <= J) throw SingularDesign("fit_flm requires more samples than basis elements");

  const int k = J + 1;
  std::vector<double> design(static_cast<std::size_t>(n) * k);
  for (int i = 0; i < n; ++i) {
    design[static_cast<std::size_t>(i) * k] = 1.0;
    const std::vector<double> p = project(basis, data.predictors[i]);
    for (int j = 0; j < J; ++j) design[static_cast<std::size_t>(i) * k + 1 + j] = p[j];
  }
  std::vector<double> coeffs;
  if (!detail::least_squares(design, data.responses, n, k, coeffs))
    throw SingularDesign("fit_flm: singular design matrix");
  FlmModel m{basis, coeffs[0], std::vector<double>(coeffs.begin() + 1, coeffs.end())};
  return m;
}

inline double predict_flm(const FlmModel& m, const DiscretizedFunction& f) {
  const std::vector<double> p = project(m.basis, f);
  double s = m.alpha;
  for (int j = 0; j < m.basis.J; ++j) s += m.c[j] * p[j];
  return s;
}

}  // namespace efr
