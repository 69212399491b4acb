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

#include <span>
#include <utility>
#include <vector>

#include "efr/dp_align.hpp"
#include "efr/errors.hpp"
#include "efr/grid.hpp"
#include "efr/warping.hpp"

namespace efr {

struct CompleteAlignmentResult {
  std::vector<DiscretizedFunction> amplitudes;  // value-warped inputs f_i o gamma_i
  std::vector<Warping> phases;                  // centered so their mean is the identity
  DiscretizedFunction template_srvf;            // converged mean of the aligned SRVFs
  int iterations = 0;
  bool converged = false;
};

/// Iterative template alignment in SRVF space. The template starts as the
/// cross-sectional mean of the SRVFs; each round aligns every SRVF to it
/// and replaces it with the mean of the aligned SRVFs, stopping when the
/// template moves less than `tol` in L2. Phases are then centered so that
/// their pointwise mean is the identity.
inline CompleteAlignmentResult complete_alignment(std::span<const DiscretizedFunction> fs,
                                                  const DpOptions& dp = {}, int max_iterations = 20,
                                                  double tol = 1e-4) {
  if (fs.empty()) throw EmptyList("complete_alignment requires at least one function");
  const Grid grid = fs.front().grid;
  const int n = static_cast<int>(fs.size());

  std::vector<DiscretizedFunction> q;
  q.reserve(n);
  for (const auto& f : fs) {
    detail::require_same_grid(grid, f.grid);
    q.push_back(srvf(f));
  }

  CompleteAlignmentResult out;
  out.phases.assign(n, identity_warping(grid));
  DiscretizedFunction mu = mean_function(q);
  std::vector<DiscretizedFunction> aligned = q;
  for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
    for (int i = 0; i < n; ++i) {
      out.phases[i] = dp_align(mu, q[i], dp);
      aligned[i] = norm_action(q[i], out.phases[i]);
    }
    DiscretizedFunction mu_next = mean_function(aligned);
    const double change = l2_norm(mu_next - mu);
    mu = std::move(mu_next);
    if (change < tol) {
      out.converged = true;
      ++out.iterations;
      break;
    }
  }

  // Center the phases: composing each with the inverse of their mean makes
  // the pointwise mean the identity (up to interpolation).
  const Warping mean_inv = invert(mean_warping(out.phases));
  for (int i = 0; i < n; ++i) {
    out.phases[i] = compose(out.phases[i], mean_inv);
    aligned[i] = norm_action(q[i], out.phases[i]);
  }
  out.template_srvf = mean_function(aligned);

  out.amplitudes.reserve(n);
  for (int i = 0; i < n; ++i) out.amplitudes.push_back(value_action(fs[i], out.phases[i]));
  return out;
}

}  // namespace efr
