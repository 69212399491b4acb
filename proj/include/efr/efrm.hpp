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
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "efr/basis.hpp"
#include "efr/dataset.hpp"
#include "efr/dp_align.hpp"
#include "efr/errors.hpp"
#include "efr/grid.hpp"
#include "efr/polynomial.hpp"
#include "efr/quasi_newton.hpp"
#include "efr/warping.hpp"

namespace efr {

/// function_space: warp the predictors themselves with the norm-preserving
/// action. srvf_space: warp their square-root velocity functions instead,
/// which makes the model invariant to value-preserving warping of the
/// predictors.
enum class WarpMode { function_space, srvf_space };

inline std::string to_string(WarpMode m) {
  return m == WarpMode::function_space ? "function" : "srvf";
}

inline WarpMode warp_mode_from_string(const std::string& s) {
  if (s == "function") return WarpMode::function_space;
  if (s == "srvf") return WarpMode::srvf_space;
  throw InvalidArgument("unknown warp mode '" + s + "'");
}

struct IndexValue {
  double value;
  Warping warping;
};

/// The elastic index sup over gamma of <beta, (f * gamma)>, together with
/// the maximizing warping found on the DP lattice.
inline IndexValue efrm_index_value(const DiscretizedFunction& beta, const DiscretizedFunction& f,
                                   WarpMode mode, const DpOptions& dp = {}) {
  detail::require_same_grid(beta.grid, f.grid);
  const DiscretizedFunction moving = (mode == WarpMode::srvf_space) ? srvf(f) : f;
  DpResult r = dp_align_detail(beta, moving, dp);
  return IndexValue{inner_product(beta, norm_action(moving, r.warping)), std::move(r.warping)};
}

namespace detail {

/// Residual-sum-of-squares evaluator for the elastic regression cost.
///
/// A full cost() call re-solves the alignment of every sample to the
/// current coefficient function (the warpings are part of the cost's
/// definition) and caches, per sample, the inner products of the aligned
/// predictor with each basis element. Because the optimal warpings are
/// piecewise constant in the coefficients, the forward-difference gradient
/// at steps of ~1e-6 sees fixed warpings, so gradient() differentiates the
/// cached fixed-warping cost instead of re-running the alignment J times.
class EfrmCostEvaluator {
public:
  EfrmCostEvaluator(const Dataset& data, IndexPolynomial h, const BasisSystem& basis, WarpMode mode,
                    DpOptions dp)
      : basis_(basis), h_(std::move(h)), dp_(dp), responses_(data.responses) {
    moving_.reserve(data.predictors.size());
    for (const auto& f : data.predictors)
      moving_.push_back(mode == WarpMode::srvf_space ? srvf(f) : f);
  }

  int n_samples() const { return static_cast<int>(moving_.size()); }
  const std::vector<DiscretizedFunction>& moving() const { return moving_; }
  void set_h(IndexPolynomial h) { h_ = std::move(h); }
  const IndexPolynomial& h() const { return h_; }

  double cost(const std::vector<double>& c) {
    const int n = n_samples();
    const int J = basis_.J;
    const DiscretizedFunction beta = expand(basis_, c);
    warps_.clear();
    warps_.reserve(n);
    aligned_ip_.assign(static_cast<std::size_t>(n) * J, 0.0);
    indices_.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      DpResult r = dp_align_detail(beta, moving_[i], dp_);
      const DiscretizedFunction aligned = norm_action(moving_[i], r.warping);
      warps_.push_back(std::move(r.warping));
      double idx = 0.0;
      for (int j = 0; j < J; ++j) {
        const double a = inner_product(aligned, basis_.elements[j]);
        aligned_ip_[static_cast<std::size_t>(i) * J + j] = a;
        idx += c[j] * a;
      }
      indices_[i] = idx;
    }
    cached_c_ = c;
    return fixed_warp_cost(c);
  }

  /// Forward-difference gradient at the most recently evaluated point.
  std::vector<double> gradient(const std::vector<double>& c) {
    if (c != cached_c_) cost(c);
    const int J = basis_.J;
    const double base = fixed_warp_cost(c);
    std::vector<double> g(J);
    std::vector<double> cp = c;
    for (int j = 0; j < J; ++j) {
      const double eps = 1e-6 * (1.0 + std::abs(c[j]));
      cp[j] = c[j] + eps;
      g[j] = (fixed_warp_cost(cp) - base) / eps;
      cp[j] = c[j];
    }
    return g;
  }

  const std::vector<Warping>& warps() const { return warps_; }
  const std::vector<double>& indices() const { return indices_; }

private:
  double fixed_warp_cost(const std::vector<double>& c) const {
    const int n = n_samples();
    const int J = basis_.J;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double idx = 0.0;
      const double* row = aligned_ip_.data() + static_cast<std::size_t>(i) * J;
      for (int j = 0; j < J; ++j) idx += c[j] * row[j];
      const double r = responses_[i] - h_(idx);
      s += r * r;
    }
    return s;
  }

  BasisSystem basis_;
  IndexPolynomial h_;
  DpOptions dp_;
  std::vector<double> responses_;
  std::vector<DiscretizedFunction> moving_;

  std::vector<double> cached_c_;
  std::vector<Warping> warps_;
  std::vector<double> aligned_ip_;  // n x J inner products with aligned samples
  std::vector<double> indices_;
};

}  // namespace detail

/// Sum of squared residuals sum_i (y_i - h(elastic index of f_i))^2.
inline double efrm_cost(std::span<const double> c, const Dataset& data, const IndexPolynomial& h,
                        const BasisSystem& basis, WarpMode mode, const DpOptions& dp = {}) {
  if (static_cast<int>(c.size()) != basis.J)
    throw InvalidArgument("coefficient count does not match basis size");
  detail::EfrmCostEvaluator ev(data, h, basis, mode, dp);
  return ev.cost(std::vector<double>(c.begin(), c.end()));
}

struct FitBetaResult {
  std::vector<double> c;
  std::vector<Warping> warps;
  std::vector<double> indices;  // elastic index per training sample at c
  double cost = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> cost_history;
};

/// Minimize the elastic regression cost over the basis coefficients with h
/// held fixed (quasi-Newton with numerical gradients). The per-sample
/// warpings are re-solved inside every cost evaluation. Returns the best
/// iterate with converged=false when the iteration budget runs out.
inline FitBetaResult fit_beta(const Dataset& data, const IndexPolynomial& h,
                              const BasisSystem& basis, WarpMode mode, std::vector<double> init_c,
                              const DpOptions& dp = {}, const QuasiNewtonOptions& qn = {}) {
  if (static_cast<int>(init_c.size()) != basis.J)
    throw InvalidArgument("init_c length does not match basis size");
  detail::require_same_grid(data.grid(), basis.grid);

  detail::EfrmCostEvaluator ev(data, h, basis, mode, dp);
  QuasiNewtonResult qr = minimize_bfgs([&](const std::vector<double>& c) { return ev.cost(c); },
                                       [&](const std::vector<double>& c) { return ev.gradient(c); },
                                       std::move(init_c), qn);
  FitBetaResult out;
  out.c = std::move(qr.x);
  ev.gradient(out.c);  // repositions the cache at out.c if a stale point is cached
  out.warps = ev.warps();
  out.indices = ev.indices();
  out.cost = qr.cost;
  out.iterations = qr.iterations;
  out.converged = qr.converged;
  out.cost_history = std::move(qr.cost_history);
  return out;
}

struct NormalizedBeta {
  std::vector<double> c;
  std::vector<Warping> warps;
};

/// Impose the identifiability constraint: transport beta by the inverse of
/// the mean training warping (norm-preserving action, re-projected onto the
/// basis) and compose every warping with that inverse on the right, so the
/// transformed warpings average to the identity.
inline NormalizedBeta normalize_identifiability(std::span<const double> c,
                                                std::span<const Warping> warps,
                                                const BasisSystem& basis) {
  if (warps.empty()) throw EmptyList("normalize_identifiability requires at least one warping");
  const Warping mean_inv = invert(mean_warping(warps));
  NormalizedBeta out;
  out.c = project(basis, norm_action(expand(basis, c), mean_inv));
  out.warps.reserve(warps.size());
  for (const auto& g : warps) out.warps.push_back(compose(g, mean_inv));
  return out;
}

struct FitDiagnostics {
  double final_cost = 0.0;
  double training_rmse = 0.0;
  int outer_iterations = 0;
  bool converged = false;
  std::vector<double> outer_cost_history;
};

/// A fitted elastic functional regression model.
struct EfrmModel {
  BasisSystem basis;
  std::vector<double> c;
  IndexPolynomial h;
  WarpMode mode = WarpMode::function_space;
  DpOptions dp;
  std::vector<Warping> training_warps;  // diagnostic; mean is ~identity
  FitDiagnostics diagnostics;

  DiscretizedFunction beta() const { return expand(basis, c); }
};

struct FitOptions {
  DpOptions dp;
  QuasiNewtonOptions qn;
  int max_outer_iterations = 20;
  double outer_relative_tolerance = 1e-4;
};

inline double predict_efrm(const EfrmModel& model, const DiscretizedFunction& f) {
  return model.h(efrm_index_value(model.beta(), f, model.mode, model.dp).value);
}

namespace detail {

/// Re-solve the alignments for a fixed coefficient function and return the
/// per-sample warps and elastic indices.
inline std::pair<std::vector<Warping>, std::vector<double>> evaluate_alignments(
    const std::vector<DiscretizedFunction>& moving, const DiscretizedFunction& beta,
    const DpOptions& dp) {
  std::vector<Warping> warps;
  std::vector<double> indices;
  warps.reserve(moving.size());
  indices.reserve(moving.size());
  for (const auto& q : moving) {
    DpResult r = dp_align_detail(beta, q, dp);
    indices.push_back(inner_product(beta, norm_action(q, r.warping)));
    warps.push_back(std::move(r.warping));
  }
  return {std::move(warps), std::move(indices)};
}

inline double residual_cost(const std::vector<double>& y, const std::vector<double>& idx,
                            const IndexPolynomial& h) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - h(idx[i]);
    s += r * r;
  }
  return s;
}

}  // namespace detail

/// Full model estimation: alternate coefficient and index-function fits
/// starting from h(x) = x, then canonicalize the coefficient sign, impose
/// the identifiability constraint and refit h against the normalized
/// coefficient function.
inline EfrmModel fit_efrm(const Dataset& data, int degree, const BasisSystem& basis, WarpMode mode,
                          const FitOptions& opts = {}) {
  detail::require_same_grid(data.grid(), basis.grid);
  const int n = data.size();
  const std::vector<double>& y = data.responses;

  // Mode-transformed predictors drive both the initializer and the fits.
  std::vector<DiscretizedFunction> moving;
  moving.reserve(n);
  for (const auto& f : data.predictors)
    moving.push_back(mode == WarpMode::srvf_space ? srvf(f) : f);

  // Response-weighted mean predictor as the starting coefficient vector;
  // all-ones when that projection is degenerate.
  std::vector<double> c;
  {
    DiscretizedFunction w = DiscretizedFunction::zero(data.grid());
    double ynorm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < w.size(); ++k) w.values[k] += y[i] * moving[i].values[k];
      ynorm2 += y[i] * y[i];
    }
    if (ynorm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(ynorm2);
      for (double& v : w.values) v *= inv;
    }
    c = project(basis, w);
    double cnorm = 0.0;
    for (double v : c) cnorm += v * v;
    if (!(std::sqrt(cnorm) > 1e-10)) c.assign(basis.J, 1.0);
  }

  IndexPolynomial h = IndexPolynomial::identity();
  FitDiagnostics diag;
  double prev_cost = std::numeric_limits<double>::infinity();
  std::vector<Warping> warps;
  bool beta_converged = false;
  bool outer_converged = false;

  for (int outer = 0; outer < opts.max_outer_iterations; ++outer) {
    FitBetaResult fb = fit_beta(data, h, basis, mode, c, opts.dp, opts.qn);
    c = fb.c;
    warps = fb.warps;
    beta_converged = fb.converged;
    h = fit_index_h(fb.indices, y, degree);
    const double cost = detail::residual_cost(y, fb.indices, h);
    diag.outer_cost_history.push_back(cost);
    diag.outer_iterations = outer + 1;
    if (std::abs(prev_cost - cost) <= opts.outer_relative_tolerance * std::max(prev_cost, 1e-12)) {
      outer_converged = true;
      prev_cost = cost;
      break;
    }
    prev_cost = cost;
  }

  // Canonical sign: the coefficient function should correlate positively
  // with the mean aligned predictor.
  {
    std::vector<DiscretizedFunction> aligned;
    aligned.reserve(n);
    for (int i = 0; i < n; ++i) aligned.push_back(norm_action(moving[i], warps[i]));
    if (inner_product(expand(basis, c), mean_function(aligned)) < 0.0) {
      for (double& v : c) v = -v;
      auto [w2, idx2] = detail::evaluate_alignments(moving, expand(basis, c), opts.dp);
      warps = std::move(w2);
      h = fit_index_h(idx2, y, degree);
    }
  }

  NormalizedBeta norm = normalize_identifiability(c, warps, basis);
  c = std::move(norm.c);

  // Refit h against the normalized coefficient function so the reported
  // model is internally consistent.
  auto [final_warps, final_indices] = detail::evaluate_alignments(moving, expand(basis, c), opts.dp);
  (void)final_warps;  // the stored diagnostics keep the centered warps
  h = fit_index_h(final_indices, y, degree);

  diag.final_cost = detail::residual_cost(y, final_indices, h);
  diag.training_rmse = std::sqrt(diag.final_cost / n);
  diag.converged = beta_converged && outer_converged;

  EfrmModel model;
  model.basis = basis;
  model.c = std::move(c);
  model.h = std::move(h);
  model.mode = mode;
  model.dp = opts.dp;
  model.training_warps = std::move(norm.warps);
  model.diagnostics = std::move(diag);
  return model;
}

}  // namespace efr
