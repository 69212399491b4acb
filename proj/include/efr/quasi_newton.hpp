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
#include <functional>
#include <vector>

namespace efr {

struct QuasiNewtonOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-6;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  int max_line_search = 40;
};

struct QuasiNewtonResult {
  std::vector<double> x;
  double cost = 0.0;
  int iterations = 0;
  /// True when the gradient tolerance was met or no descent step exists at
  /// machine precision; false only when the iteration budget ran out.
  bool converged = false;
  /// Cost at the start plus after every accepted step (non-increasing).
  std::vector<double> cost_history;
};

/// Dense BFGS with Armijo backtracking. `cost` is always evaluated at a
/// candidate point before `gradient` is requested there, so implementations
/// may cache state from the last cost call.
inline QuasiNewtonResult minimize_bfgs(const std::function<double(const std::vector<double>&)>& cost,
                                       const std::function<std::vector<double>(const std::vector<double>&)>& gradient,
                                       std::vector<double> x0,
                                       const QuasiNewtonOptions& opts = {}) {
  const int d = static_cast<int>(x0.size());
  auto dot = [d](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
  };
  auto norm = [&](const std::vector<double>& a) { return std::sqrt(dot(a, a)); };

  QuasiNewtonResult res;
  res.x = std::move(x0);
  res.cost = cost(res.x);
  res.cost_history.push_back(res.cost);
  std::vector<double> g = gradient(res.x);

  // Inverse Hessian approximation, row-major, starts at identity.
  std::vector<double> hinv(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) hinv[static_cast<std::size_t>(i) * d + i] = 1.0;
  bool first_update = true;

  for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
    if (norm(g) < opts.gradient_tolerance) {
      res.converged = true;
      return res;
    }
    std::vector<double> dir(d, 0.0);
    for (int i = 0; i < d; ++i) {
      double s = 0.0;
      for (int j = 0; j < d; ++j) s -= hinv[static_cast<std::size_t>(i) * d + j] * g[j];
      dir[i] = s;
    }
    double slope = dot(g, dir);
    if (!(slope < 0.0)) {  // not a descent direction; reset to steepest descent
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) hinv[static_cast<std::size_t>(i) * d + j] = (i == j) ? 1.0 : 0.0;
        dir[i] = -g[i];
      }
      first_update = true;
      slope = dot(g, dir);
    }

    double step = 1.0;
    std::vector<double> xn(d);
    double fn = res.cost;
    bool accepted = false;
    for (int ls = 0; ls < opts.max_line_search; ++ls) {
      for (int i = 0; i < d; ++i) xn[i] = res.x[i] + step * dir[i];
      fn = cost(xn);
      if (fn <= res.cost + opts.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= opts.backtrack;
    }
    if (!accepted) {
      // No decrease possible along the best available direction: the
      // iterate is stationary at the resolution of the cost function.
      res.converged = true;
      // Leave the cached state of `cost` positioned at res.x.
      cost(res.x);
      return res;
    }

    std::vector<double> gn = gradient(xn);
    std::vector<double> s(d), yv(d);
    for (int i = 0; i < d; ++i) {
      s[i] = xn[i] - res.x[i];
      yv[i] = gn[i] - g[i];
    }
    const double ys = dot(yv, s);
    if (ys > 1e-12 * norm(yv) * norm(s)) {
      if (first_update) {
        const double scale = ys / dot(yv, yv);
        if (std::isfinite(scale) && scale > 0.0)
          for (int i = 0; i < d; ++i) hinv[static_cast<std::size_t>(i) * d + i] = scale;
        first_update = false;
      }
      // hinv <- (I - r s y') hinv (I - r y s') + r s s'
      const double r = 1.0 / ys;
      std::vector<double> hy(d, 0.0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) hy[i] += hinv[static_cast<std::size_t>(i) * d + j] * yv[j];
      const double yhy = dot(yv, hy);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          hinv[static_cast<std::size_t>(i) * d + j] +=
              -r * (s[i] * hy[j] + hy[i] * s[j]) + r * (1.0 + r * yhy) * s[i] * s[j];
    }

    res.x = xn;
    res.cost = fn;
    res.cost_history.push_back(fn);
    g = std::move(gn);
  }
  res.converged = norm(g) < opts.gradient_tolerance;
  return res;
}

}  // namespace efr
