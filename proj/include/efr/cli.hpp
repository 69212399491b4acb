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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "efr/alignment.hpp"
#include "efr/csv.hpp"
#include "efr/efrm.hpp"
#include "efr/errors.hpp"
#include "efr/evaluate.hpp"
#include "efr/flm.hpp"
#include "efr/kernel_regression.hpp"
#include "efr/model_io.hpp"
#include "efr/paflm.hpp"
#include "efr/simulate.hpp"

namespace efr {

/// Exit codes: distinct classes for usage, parse, numeric and IO failures.
enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 2,
  exit_parse = 3,
  exit_numeric = 4,
  exit_io = 5,
};

/// Everything a command needs, fed either from command-line flags (which
/// override a config file, which overrides these defaults) or directly by
/// tests.
struct RunConfig {
  std::string data_path;
  std::string responses_path;
  std::string model_path;
  std::string out_path;

  std::string basis = "fourier";
  int J = 0;  // 0 = default for the basis kind (2 for fourier, 20 for bspline)
  int spline_order = 4;
  int h_degree = 2;
  std::string mode = "function";
  int max_step = 7;
  int lattice_stride = 1;

  int k = 5;
  std::uint64_t seed = 0;

  // simulate
  int dataset = 1;
  int n_samples = 100;
  int grid_size = 100;
  double warp_amplitude = 0.5;
  double noise_sd = 0.01;
  std::string h_coeffs;  // comma-separated; empty = pure leading monomial

  // decay
  std::string a_grid = "0.05,0.15,0.25,0.35,0.5";
  std::string contamination = "both";  // value | norm | both
  int runs = 200;

  // crossval
  std::string models = "efrm-1,efrm-2,efrm-3,flm,paflm,np-l2,np-shape";

  int verbosity = 1;
};

namespace detail {

inline std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    double v;
    if (!parse_double(tok, v)) throw InvalidArgument("bad " + what + " entry '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

inline std::vector<std::string> parse_string_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

inline int default_J(const std::string& basis, int J) {
  if (J > 0) return J;
  return basis == "bspline" ? 20 : 2;
}

inline BasisSystem make_basis(const RunConfig& cfg, Grid grid) {
  const BasisKind kind = basis_kind_from_string(cfg.basis);
  const int J = default_J(cfg.basis, cfg.J);
  return kind == BasisKind::fourier ? fourier_basis(J, grid)
                                    : bspline_basis(J, grid, cfg.spline_order);
}

inline DpOptions make_dp(const RunConfig& cfg) {
  return DpOptions{cfg.max_step, cfg.lattice_stride};
}

inline IndexPolynomial true_h_from_config(const RunConfig& cfg) {
  if (cfg.h_coeffs.empty()) {
    std::vector<double> c(cfg.h_degree + 1, 0.0);
    c[0] = 1.0;  // pure leading monomial: x, x^2 or x^3
    return IndexPolynomial::make(cfg.h_degree, std::move(c));
  }
  return IndexPolynomial::make(cfg.h_degree, parse_double_list(cfg.h_coeffs, "--h-coeffs"));
}

inline Dataset read_dataset(const RunConfig& cfg) {
  if (cfg.data_path.empty()) throw InvalidArgument("--data is required");
  if (cfg.responses_path.empty()) throw InvalidArgument("--responses is required");
  auto predictors = read_predictors_csv(cfg.data_path);
  auto responses = read_responses_csv(cfg.responses_path);
  if (predictors.size() != responses.size())
    throw InvalidArgument("row counts differ: " + std::to_string(predictors.size()) +
                          " predictors vs " + std::to_string(responses.size()) + " responses");
  return Dataset::create(std::move(predictors), std::move(responses));
}

inline void ensure_parent_dir(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

}  // namespace detail

/// simulate: write predictors.csv, responses.csv and truth.json under --out.
inline int cmd_simulate(const RunConfig& cfg) {
  if (cfg.out_path.empty()) throw InvalidArgument("--out directory is required");
  SimConfig sim;
  sim.n_samples = cfg.n_samples;
  sim.grid_size = cfg.grid_size;
  sim.warp_amplitude = cfg.warp_amplitude;
  sim.noise_sd = cfg.noise_sd;
  sim.seed = cfg.seed;
  sim.h_true = detail::true_h_from_config(cfg);
  sim.dp = detail::make_dp(cfg);
  if (cfg.dataset == 2) {
    sim.bspline_J = detail::default_J("bspline", cfg.J);
    sim.bspline_order = cfg.spline_order;
  }
  const SimulatedData sd = (cfg.dataset == 2) ? simulate_data2(sim) : simulate_data1(sim);

  std::filesystem::create_directories(cfg.out_path);
  const std::filesystem::path dir(cfg.out_path);
  write_predictors_csv((dir / "predictors.csv").string(), sd.data.predictors, sd.data.grid());
  write_responses_csv((dir / "responses.csv").string(), sd.data.responses);
  std::ofstream tf(dir / "truth.json");
  if (!tf) throw IoError("cannot open truth.json for writing");
  tf << truth_to_json(sd.truth).dump(2) << "\n";
  if (cfg.verbosity > 0)
    std::cout << "wrote " << sd.data.size() << " samples on a " << sd.data.grid().n_points
              << "-point grid to " << cfg.out_path << "\n";
  return exit_ok;
}

/// fit: estimate an elastic regression model, write the model document and
/// a small fit report.
inline int cmd_fit(const RunConfig& cfg) {
  if (cfg.model_path.empty()) throw InvalidArgument("--model output path is required");
  const Dataset data = detail::read_dataset(cfg);
  const BasisSystem basis = detail::make_basis(cfg, data.grid());
  if (data.size() <= basis.J)
    throw SingularDesign("need more samples than basis elements (" + std::to_string(data.size()) +
                         " <= " + std::to_string(basis.J) + ")");
  FitOptions opts;
  opts.dp = detail::make_dp(cfg);
  const EfrmModel model =
      fit_efrm(data, cfg.h_degree, basis, warp_mode_from_string(cfg.mode), opts);

  detail::ensure_parent_dir(cfg.model_path);
  save_efrm(model, cfg.model_path);

  const std::string report_path =
      cfg.out_path.empty() ? cfg.model_path + ".report.json" : cfg.out_path;
  detail::ensure_parent_dir(report_path);
  std::ofstream rf(report_path);
  if (!rf) throw IoError("cannot open '" + report_path + "' for writing");
  rf << nlohmann::json{{"final_cost", model.diagnostics.final_cost},
                       {"training_rmse", model.diagnostics.training_rmse},
                       {"outer_iterations", model.diagnostics.outer_iterations},
                       {"converged", model.diagnostics.converged}}
            .dump(2)
     << "\n";
  if (!model.diagnostics.converged)
    std::cerr << "warning: fit did not converge within the iteration budget\n";
  if (cfg.verbosity > 0)
    std::cout << "training RMSE " << model.diagnostics.training_rmse << " after "
              << model.diagnostics.outer_iterations << " outer iterations\n";
  return exit_ok;
}

/// predict: one prediction per input row, order preserved.
inline int cmd_predict(const RunConfig& cfg) {
  if (cfg.model_path.empty()) throw InvalidArgument("--model is required");
  if (cfg.data_path.empty()) throw InvalidArgument("--data is required");
  if (cfg.out_path.empty()) throw InvalidArgument("--out is required");
  const EfrmModel model = load_efrm(cfg.model_path);
  const auto predictors = read_predictors_csv(cfg.data_path);
  for (const auto& f : predictors)
    if (f.grid.n_points != model.basis.grid.n_points)
      throw GridMismatch("model expects grid size " + std::to_string(model.basis.grid.n_points) +
                         ", data has " + std::to_string(f.grid.n_points));
  detail::ensure_parent_dir(cfg.out_path);
  std::ofstream f = detail::open_for_write(cfg.out_path);
  f << "y_hat\n";
  for (const auto& p : predictors) f << format_double(predict_efrm(model, p)) << "\n";
  if (!f) throw IoError("failed writing '" + cfg.out_path + "'");
  return exit_ok;
}

namespace detail {

inline ModelFitter make_fitter(const std::string& name, const RunConfig& cfg,
                               const BasisSystem& basis) {
  const DpOptions dp = make_dp(cfg);
  const WarpMode mode = warp_mode_from_string(cfg.mode);
  if (name == "efrm-1" || name == "efrm-2" || name == "efrm-3") {
    const int degree = name.back() - '0';
    return [=](const Dataset& train) {
      FitOptions opts;
      opts.dp = dp;
      auto model = std::make_shared<EfrmModel>(fit_efrm(train, degree, basis, mode, opts));
      return [model](const DiscretizedFunction& f) { return predict_efrm(*model, f); };
    };
  }
  if (name == "flm") {
    return [=](const Dataset& train) {
      auto model = std::make_shared<FlmModel>(fit_flm(train, basis));
      return [model](const DiscretizedFunction& f) { return predict_flm(*model, f); };
    };
  }
  if (name == "paflm") {
    return [=](const Dataset& train) {
      auto model = std::make_shared<PaflmModel>(fit_paflm(train, basis, dp));
      return [model](const DiscretizedFunction& f) { return predict_paflm(*model, f); };
    };
  }
  if (name == "np-l2") {
    return [=](const Dataset& train) {
      const double b = cv_bandwidth(train, NwDistance::l2);
      auto reg = std::make_shared<NwRegressor>(train, NwDistance::l2);
      return [reg, b](const DiscretizedFunction& f) { return reg->predict(f, b).value; };
    };
  }
  if (name == "np-shape") {
    return [=](const Dataset& train) {
      const auto [lambda, b] = cv_lambda_bandwidth(train, dp);
      auto reg = std::make_shared<NwRegressor>(train, NwDistance::shape, lambda, dp);
      return [reg, b](const DiscretizedFunction& f) { return reg->predict(f, b).value; };
    };
  }
  throw InvalidArgument("unknown model '" + name + "'");
}

}  // namespace detail

/// crossval: k-fold comparison table over the requested models. A failing
/// model is reported as NA and does not abort the rest.
inline int cmd_crossval(const RunConfig& cfg) {
  if (cfg.out_path.empty()) throw InvalidArgument("--out is required");
  if (cfg.k < 2) throw InvalidArgument("--k must be >= 2");
  const Dataset data = detail::read_dataset(cfg);
  const BasisSystem basis = detail::make_basis(cfg, data.grid());

  detail::ensure_parent_dir(cfg.out_path);
  std::ofstream f = detail::open_for_write(cfg.out_path);
  f << "model,mean_rmse,sd_rmse\n";
  for (const std::string& name : detail::parse_string_list(cfg.models)) {
    try {
      const EvalReport rep = kfold_cv(data, cfg.k, detail::make_fitter(name, cfg, basis), cfg.seed);
      f << name << "," << format_double(rep.mean_rmse) << "," << format_double(rep.sd_rmse) << "\n";
      if (cfg.verbosity > 0)
        std::cout << name << ": " << rep.mean_rmse << " (" << rep.sd_rmse << ")\n";
    } catch (const std::exception& e) {
      f << name << ",NA,NA\n";
      std::cerr << name << " failed: " << e.what() << "\n";
    }
  }
  if (!f) throw IoError("failed writing '" + cfg.out_path + "'");
  return exit_ok;
}

/// decay: phase-contamination experiment table (a, contamination_type,
/// mean_r2, sd_r2, n_runs).
inline int cmd_decay(const RunConfig& cfg) {
  if (cfg.out_path.empty()) throw InvalidArgument("--out is required");
  const std::vector<double> a_grid = detail::parse_double_list(cfg.a_grid, "--a-grid");
  if (a_grid.empty()) throw InvalidArgument("--a-grid must not be empty");
  std::vector<Contamination> types;
  if (cfg.contamination == "value")
    types = {Contamination::value};
  else if (cfg.contamination == "norm")
    types = {Contamination::norm};
  else if (cfg.contamination == "both")
    types = {Contamination::value, Contamination::norm};
  else
    throw InvalidArgument("--contamination must be value, norm or both");

  DecayOptions opts;
  opts.n_samples = cfg.n_samples;
  opts.grid_size = cfg.grid_size;
  opts.noise_sd = cfg.noise_sd;
  const auto rows = decay_experiment(a_grid, types, cfg.runs, cfg.seed, opts);

  detail::ensure_parent_dir(cfg.out_path);
  std::ofstream f = detail::open_for_write(cfg.out_path);
  f << "a,contamination_type,mean_r2,sd_r2,n_runs\n";
  for (const auto& r : rows)
    f << format_double(r.a) << "," << to_string(r.contamination) << ","
      << format_double(r.mean_r2) << "," << format_double(r.sd_r2) << "," << r.n_runs << "\n";
  if (!f) throw IoError("failed writing '" + cfg.out_path + "'");
  return exit_ok;
}

/// align: phase-amplitude separation of raw predictors, independent of any
/// regression; writes aligned.csv and phases.csv under --out.
inline int cmd_align(const RunConfig& cfg) {
  if (cfg.data_path.empty()) throw InvalidArgument("--data is required");
  if (cfg.out_path.empty()) throw InvalidArgument("--out directory is required");
  const auto predictors = read_predictors_csv(cfg.data_path);
  if (predictors.empty()) throw InvalidArgument("no predictors in " + cfg.data_path);
  const auto ca = complete_alignment(predictors, detail::make_dp(cfg));

  std::filesystem::create_directories(cfg.out_path);
  const std::filesystem::path dir(cfg.out_path);
  write_predictors_csv((dir / "aligned.csv").string(), ca.amplitudes, predictors.front().grid);
  std::vector<std::vector<double>> phase_rows;
  phase_rows.reserve(ca.phases.size());
  for (const auto& g : ca.phases) phase_rows.push_back(g.values);
  write_matrix_csv((dir / "phases.csv").string(), phase_rows, predictors.front().grid.n_points);
  return exit_ok;
}

/// Exception-to-exit-code mapping shared by the command-line tool and the
/// in-process tests.
template <class F>
int run_guarded(F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return exit_io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numeric;
  }
}

}  // namespace efr
