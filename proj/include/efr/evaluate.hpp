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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "efr/dataset.hpp"
#include "efr/errors.hpp"
#include "efr/flm.hpp"
#include "efr/grid.hpp"
#include "efr/simulate.hpp"

namespace efr {

inline double rmse(std::span<const double> y, std::span<const double> yhat) {
  if (y.size() != yhat.size() || y.empty()) throw InvalidArgument("rmse: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - yhat[i];
    s += r * r;
  }
  return std::sqrt(s / y.size());
}

/// Root squared L2 error of a functional estimate.
inline double rse_l2(const DiscretizedFunction& truth, const DiscretizedFunction& est) {
  return l2_norm(truth - est);
}

/// Coefficient of determination 1 - SSres/SStot; may be negative. Returns
/// NaN when the responses are constant (SStot = 0), in which case R^2 is
/// undefined.
inline double r_squared(std::span<const double> y, std::span<const double> yhat) {
  if (y.size() != yhat.size() || y.empty()) throw InvalidArgument("r_squared: length mismatch");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= y.size();
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - yhat[i]) * (y[i] - yhat[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  if (ss_tot == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return 1.0 - ss_res / ss_tot;
}

/// A model fitter for the cross-validation harness: consumes a training
/// set, returns a predictor closure.
using ModelFitter =
    std::function<std::function<double(const DiscretizedFunction&)>(const Dataset&)>;

struct EvalReport {
  std::vector<double> fold_rmse;
  double mean_rmse = 0.0;
  double sd_rmse = 0.0;
  std::map<std::string, double> rse;  // optional per-parameter errors
  double runtime_seconds = 0.0;
};

/// k-fold cross-validation: one seeded shuffle, near-equal folds (sizes
/// differ by at most one), RMSE on each held-out fold.
inline EvalReport kfold_cv(const Dataset& data, int k, const ModelFitter& fitter,
                           std::uint64_t seed) {
  const int n = data.size();
  if (k < 2) throw InvalidArgument("kfold_cv requires k >= 2");
  if (n < k) throw InvalidArgument("kfold_cv requires at least k samples");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const auto t0 = std::chrono::steady_clock::now();
  EvalReport report;
  for (int fold = 0; fold < k; ++fold) {
    std::vector<int> train_idx, test_idx;
    for (int i = 0; i < n; ++i)
      (i % k == fold ? test_idx : train_idx).push_back(order[i]);
    const Dataset train = data.subset(train_idx);
    const Dataset test = data.subset(test_idx);
    const auto predict = fitter(train);
    std::vector<double> yhat;
    yhat.reserve(test.size());
    for (const auto& f : test.predictors) yhat.push_back(predict(f));
    report.fold_rmse.push_back(rmse(test.responses, yhat));
  }
  double m = 0.0;
  for (double v : report.fold_rmse) m += v;
  m /= k;
  double var = 0.0;
  for (double v : report.fold_rmse) var += (v - m) * (v - m);
  report.mean_rmse = m;
  report.sd_rmse = (k > 1) ? std::sqrt(var / (k - 1)) : 0.0;
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

enum class Contamination { value, norm };

inline std::string to_string(Contamination c) {
  return c == Contamination::value ? "value" : "norm";
}

struct DecayRow {
  double a = 0.0;
  Contamination contamination = Contamination::value;
  double mean_r2 = 0.0;
  double sd_r2 = 0.0;
  int n_runs = 0;
};

struct DecayOptions {
  int n_samples = 100;
  int grid_size = 100;
  double noise_sd = 0.01;
  double train_fraction = 0.8;
};

/// Phase-contamination decay experiment. Each run simulates clean Fourier
/// predictors with linear responses y = <beta, f> + eps, fits an FLM on a
/// random 80/20 split, contaminates the test predictors with random
/// parametric warpings of amplitude a under the chosen action, and records
/// the test R^2. Rows report the mean and standard deviation over runs for
/// every (a, contamination) pair.
inline std::vector<DecayRow> decay_experiment(std::span<const double> a_grid,
                                              std::span<const Contamination> types, int n_runs,
                                              std::uint64_t seed, const DecayOptions& opts = {}) {
  if (n_runs < 1) throw InvalidArgument("decay_experiment requires n_runs >= 1");
  for (double a : a_grid)
    if (a < 0.0 || a >= 1.0) throw InvalidArgument("decay a values must satisfy 0 <= a < 1");

  const Grid grid = Grid::of_size(opts.grid_size);
  const BasisSystem basis = fourier_basis(2, grid);
  const DiscretizedFunction beta = expand(basis, std::vector<double>{1.0, 1.0});
  const int n_train = std::max(2, static_cast<int>(opts.n_samples * opts.train_fraction));
  const int n_test = opts.n_samples - n_train;
  if (n_test < 2) throw InvalidArgument("decay_experiment: test split too small");

  std::vector<DecayRow> rows;
  for (std::size_t ai = 0; ai < a_grid.size(); ++ai) {
    for (const Contamination type : types) {
      std::vector<double> r2s;
      r2s.reserve(n_runs);
      for (int run = 0; run < n_runs; ++run) {
        // Independent stream per (a, type, run) so results do not depend on
        // evaluation order.
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (ai * 1000003 + run * 17 +
                                                            (type == Contamination::norm)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<DiscretizedFunction> fs;
        std::vector<double> ys;
        fs.reserve(opts.n_samples);
        ys.reserve(opts.n_samples);
        for (int i = 0; i < opts.n_samples; ++i) {
          const double c1 = gauss(rng), c2 = gauss(rng);
          DiscretizedFunction f = expand(basis, std::vector<double>{c1, c2});
          ys.push_back(inner_product(beta, f) + opts.noise_sd * gauss(rng));
          fs.push_back(std::move(f));
        }
        std::vector<int> order(opts.n_samples);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);

        std::vector<DiscretizedFunction> train_f, test_f;
        std::vector<double> train_y, test_y;
        for (int i = 0; i < opts.n_samples; ++i) {
          if (i < n_train) {
            train_f.push_back(fs[order[i]]);
            train_y.push_back(ys[order[i]]);
          } else {
            test_f.push_back(fs[order[i]]);
            test_y.push_back(ys[order[i]]);
          }
        }
        const FlmModel flm = fit_flm(Dataset::create(std::move(train_f), std::move(train_y)), basis);

        std::vector<double> yhat;
        yhat.reserve(n_test);
        for (auto& f : test_f) {
          const Warping gamma = random_parametric_warping(a_grid[ai], rng, grid);
          const DiscretizedFunction contaminated =
              (type == Contamination::value) ? value_action(f, gamma) : norm_action(f, gamma);
          yhat.push_back(predict_flm(flm, contaminated));
        }
        r2s.push_back(r_squared(test_y, yhat));
      }
      double m = 0.0;
      for (double v : r2s) m += v;
      m /= n_runs;
      double var = 0.0;
      for (double v : r2s) var += (v - m) * (v - m);
      rows.push_back(DecayRow{a_grid[ai], type, m,
                              (n_runs > 1) ? std::sqrt(var / (n_runs - 1)) : 0.0, n_runs});
    }
  }
  return rows;
}

}  // namespace efr
