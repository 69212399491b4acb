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
#include <limits>
#include <utility>
#include <vector>

#include "efr/alignment.hpp"
#include "efr/dataset.hpp"
#include "efr/dp_align.hpp"
#include "efr/errors.hpp"
#include "efr/warping.hpp"

namespace efr {

enum class NwDistance { l2, shape };

struct NwPrediction {
  double value = 0.0;
  /// Set when every kernel weight underflowed to zero and the prediction
  /// fell back to the mean training response.
  bool degenerate = false;
};

/// Functional Nadaraya-Watson estimator with a Gaussian kernel
/// K(u) = exp(-u^2/2) and either the plain L2 distance or a weighted shape
/// distance lambda * d_amplitude + (1 - lambda) * d_phase. The shape
/// distance pre-aligns the training set once; a query is aligned to the
/// stored template, after which its amplitude and phase are compared with
/// the pre-aligned training amplitudes and phases.
class NwRegressor {
public:
  NwRegressor(Dataset train, NwDistance distance, double lambda = 1.0, DpOptions dp = {})
      : train_(std::move(train)), distance_(distance), lambda_(lambda), dp_(dp) {
    if (distance_ == NwDistance::shape) {
      alignment_ = complete_alignment(train_.predictors, dp_);
      sqrt_phase_derivs_.reserve(train_.size());
      for (const auto& g : alignment_.phases) sqrt_phase_derivs_.push_back(sqrt_phase_deriv(g));
    }
  }

  const Dataset& train() const { return train_; }
  NwDistance distance() const { return distance_; }
  double lambda() const { return lambda_; }

  NwPrediction predict(const DiscretizedFunction& f, double bandwidth) const {
    if (!(bandwidth > 0.0)) throw InvalidArgument("bandwidth must be positive");
    return weighted_mean(distances_to(f), train_.responses, bandwidth);
  }

  /// Distances from a query function to every training sample.
  std::vector<double> distances_to(const DiscretizedFunction& f) const {
    const int n = train_.size();
    std::vector<double> d(n);
    if (distance_ == NwDistance::l2) {
      for (int i = 0; i < n; ++i) d[i] = l2_norm(f - train_.predictors[i]);
      return d;
    }
    const Warping gamma = dp_align(alignment_.template_srvf, srvf(f), dp_);
    const DiscretizedFunction amp = value_action(f, gamma);
    const DiscretizedFunction spd = sqrt_phase_deriv(gamma);
    for (int i = 0; i < n; ++i)
      d[i] = lambda_ * l2_norm(amp - alignment_.amplitudes[i]) +
             (1.0 - lambda_) * l2_norm(spd - sqrt_phase_derivs_[i]);
    return d;
  }

  /// Pairwise amplitude distances between training samples (shape mode),
  /// or plain L2 distances.
  std::vector<double> pairwise_amplitude() const {
    const auto& fs =
        (distance_ == NwDistance::shape) ? alignment_.amplitudes : train_.predictors;
    return pairwise_l2(fs);
  }

  /// Pairwise phase distances between training samples; zero in l2 mode.
  std::vector<double> pairwise_phase() const {
    const int n = train_.size();
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    if (distance_ == NwDistance::shape)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          d[static_cast<std::size_t>(i) * n + j] = d[static_cast<std::size_t>(j) * n + i] =
              l2_norm(sqrt_phase_derivs_[i] - sqrt_phase_derivs_[j]);
    return d;
  }

  static NwPrediction weighted_mean(const std::vector<double>& distances,
                                    const std::vector<double>& responses, double bandwidth) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
      const double u = distances[i] / bandwidth;
      const double w = std::exp(-0.5 * u * u);
      num += responses[i] * w;
      den += w;
    }
    if (den == 0.0) {
      double mean = 0.0;
      for (double y : responses) mean += y;
      return NwPrediction{responses.empty() ? 0.0 : mean / responses.size(), true};
    }
    return NwPrediction{num / den, false};
  }

private:
  DiscretizedFunction sqrt_phase_deriv(const Warping& g) const {
    DiscretizedFunction d = derivative(g.as_function());
    for (double& v : d.values) v = std::sqrt(std::max(v, 0.0));
    return d;
  }

  std::vector<double> pairwise_l2(const std::vector<DiscretizedFunction>& fs) const {
    const int n = static_cast<int>(fs.size());
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        d[static_cast<std::size_t>(i) * n + j] = d[static_cast<std::size_t>(j) * n + i] =
            l2_norm(fs[i] - fs[j]);
    return d;
  }

  Dataset train_;
  NwDistance distance_;
  double lambda_;
  DpOptions dp_;
  CompleteAlignmentResult alignment_;  // shape mode only
  std::vector<DiscretizedFunction> sqrt_phase_derivs_;
};

/// One-shot convenience form. Builds the (possibly pre-aligned) regressor,
/// predicts once and discards it; use NwRegressor directly in loops.
inline NwPrediction nw_predict(const Dataset& train, const DiscretizedFunction& f,
                               double bandwidth, NwDistance distance, double lambda = 1.0,
                               const DpOptions& dp = {}) {
  return NwRegressor(train, distance, lambda, dp).predict(f, bandwidth);
}

namespace detail {

/// Leave-one-out squared prediction error of the NW estimator for a fixed
/// pairwise distance matrix.
inline double nw_loo_error(const std::vector<double>& dist, const std::vector<double>& y,
                           double bandwidth) {
  const int n = static_cast<int>(y.size());
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    double num = 0.0, den = 0.0, rest = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double u = dist[static_cast<std::size_t>(i) * n + j] / bandwidth;
      const double w = std::exp(-0.5 * u * u);
      num += y[j] * w;
      den += w;
      rest += y[j];
    }
    const double pred = (den == 0.0) ? rest / (n - 1) : num / den;
    const double r = y[i] - pred;
    err += r * r;
  }
  return err;
}

/// 32 log-spaced bandwidths spanning [0.01, 100] x the median pairwise
/// distance.
inline std::vector<double> bandwidth_grid(const std::vector<double>& dist, int n) {
  std::vector<double> off;
  off.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) off.push_back(dist[static_cast<std::size_t>(i) * n + j]);
  std::sort(off.begin(), off.end());
  double med = off.empty() ? 1.0 : off[(off.size() - 1) / 2];
  if (!(med > 0.0)) med = 1.0;
  std::vector<double> grid(32);
  for (int k = 0; k < 32; ++k) grid[k] = med * std::pow(10.0, -2.0 + 4.0 * k / 31.0);
  return grid;
}

/// Bandwidth with the lowest LOO error; ties resolve to the median of the
/// tied grid points, so a flat error profile returns the grid median.
inline std::pair<double, double> select_bandwidth(const std::vector<double>& dist,
                                                  const std::vector<double>& y) {
  const int n = static_cast<int>(y.size());
  const std::vector<double> grid = bandwidth_grid(dist, n);
  std::vector<double> errs(grid.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    errs[k] = nw_loo_error(dist, y, grid[k]);
    best = std::min(best, errs[k]);
  }
  std::vector<std::size_t> tied;
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (errs[k] <= best + 1e-12 * (1.0 + best)) tied.push_back(k);
  const std::size_t pick = tied[(tied.size() - 1) / 2];
  return {grid[pick], errs[pick]};
}

}  // namespace detail

/// Cross-validated bandwidth for a fixed distance (and fixed lambda when
/// the shape distance is used).
inline double cv_bandwidth(const Dataset& train, NwDistance distance, double lambda = 1.0,
                           const DpOptions& dp = {}) {
  if (train.size() < 3) throw InvalidArgument("cv_bandwidth requires at least 3 samples");
  NwRegressor reg(train, distance, lambda, dp);
  const int n = train.size();
  const std::vector<double> da = reg.pairwise_amplitude();
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  if (distance == NwDistance::l2) {
    dist = da;
  } else {
    const std::vector<double> dph = reg.pairwise_phase();
    for (std::size_t k = 0; k < dist.size(); ++k)
      dist[k] = lambda * da[k] + (1.0 - lambda) * dph[k];
  }
  return detail::select_bandwidth(dist, train.responses).first;
}

/// Joint selection for the shape distance: the per-lambda optimal bandwidth
/// is computed for lambda in {0, 0.1, ..., 1}, and the pair with the lowest
/// leave-one-out error wins (lowest lambda on ties).
inline std::pair<double, double> cv_lambda_bandwidth(const Dataset& train,
                                                     const DpOptions& dp = {}) {
  if (train.size() < 3) throw InvalidArgument("cv_lambda_bandwidth requires at least 3 samples");
  NwRegressor reg(train, NwDistance::shape, 1.0, dp);
  const int n = train.size();
  const std::vector<double> da = reg.pairwise_amplitude();
  const std::vector<double> dph = reg.pairwise_phase();
  double best_err = std::numeric_limits<double>::infinity();
  double best_lambda = 0.0, best_b = 1.0;
  std::vector<double> dist(static_cast<std::size_t>(n) * n);
  for (int l = 0; l <= 10; ++l) {
    const double lambda = 0.1 * l;
    for (std::size_t k = 0; k < dist.size(); ++k)
      dist[k] = lambda * da[k] + (1.0 - lambda) * dph[k];
    const auto [b, err] = detail::select_bandwidth(dist, train.responses);
    if (err < best_err) {
      best_err = err;
      best_lambda = lambda;
      best_b = b;
    }
  }
  return {best_lambda, best_b};
}

}  // namespace efr
