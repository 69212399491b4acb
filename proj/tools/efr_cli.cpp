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

#include <CLI11.hpp>

#include "efr/cli.hpp"

namespace {

void add_common_model_flags(CLI::App* cmd, efr::RunConfig& cfg) {
  cmd->add_option("--basis", cfg.basis, "coefficient basis")
      ->check(CLI::IsMember({"fourier", "bspline"}));
  cmd->add_option("--J", cfg.J, "number of basis elements (0 = basis default)");
  cmd->add_option("--spline-order", cfg.spline_order, "B-spline order");
  cmd->add_option("--h-degree", cfg.h_degree, "index polynomial degree")
      ->check(CLI::IsMember({1, 2, 3}));
  cmd->add_option("--mode", cfg.mode, "warping mode")->check(CLI::IsMember({"function", "srvf"}));
  cmd->add_option("--max-step", cfg.max_step, "largest DP lattice step");
  cmd->add_option("--lattice-stride", cfg.lattice_stride, "DP breakpoint stride");
}

}  // namespace

int main(int argc, char** argv) {
  efr::RunConfig cfg;
  CLI::App app{"elastic functional regression: simulate, fit, predict, evaluate"};
  app.require_subcommand(1);
  app.set_config("--config");

  auto* sim = app.add_subcommand("simulate", "generate a synthetic dataset with known truth");
  sim->add_option("--out", cfg.out_path, "output directory")->required();
  sim->add_option("--dataset", cfg.dataset, "generator family: 1 (Fourier) or 2 (B-spline)")
      ->check(CLI::IsMember({1, 2}));
  sim->add_option("--n-samples", cfg.n_samples, "number of samples");
  sim->add_option("--grid-size", cfg.grid_size, "grid resolution");
  sim->add_option("--warp-amplitude", cfg.warp_amplitude, "warping amplitude a in [0,1)");
  sim->add_option("--noise-sd", cfg.noise_sd, "response noise standard deviation");
  sim->add_option("--seed", cfg.seed, "random seed");
  sim->add_option("--h-coeffs", cfg.h_coeffs,
                  "true index polynomial coefficients, highest degree first");
  add_common_model_flags(sim, cfg);

  auto* fit = app.add_subcommand("fit", "fit an elastic regression model");
  fit->add_option("--data", cfg.data_path, "predictor CSV")->required();
  fit->add_option("--responses", cfg.responses_path, "response CSV")->required();
  fit->add_option("--model", cfg.model_path, "output model JSON")->required();
  fit->add_option("--out", cfg.out_path, "fit report path (default: <model>.report.json)");
  add_common_model_flags(fit, cfg);

  auto* pred = app.add_subcommand("predict", "predict responses with a fitted model");
  pred->add_option("--model", cfg.model_path, "model JSON")->required();
  pred->add_option("--data", cfg.data_path, "predictor CSV")->required();
  pred->add_option("--out", cfg.out_path, "predictions CSV")->required();

  auto* cv = app.add_subcommand("crossval", "k-fold model comparison table");
  cv->add_option("--data", cfg.data_path, "predictor CSV")->required();
  cv->add_option("--responses", cfg.responses_path, "response CSV")->required();
  cv->add_option("--out", cfg.out_path, "output table CSV")->required();
  cv->add_option("--k", cfg.k, "number of folds");
  cv->add_option("--seed", cfg.seed, "fold shuffle seed");
  cv->add_option("--models", cfg.models, "comma-separated model list");
  add_common_model_flags(cv, cfg);

  auto* decay = app.add_subcommand("decay", "phase-contamination decay experiment");
  decay->add_option("--out", cfg.out_path, "output table CSV")->required();
  decay->add_option("--a-grid", cfg.a_grid, "comma-separated warp amplitudes");
  decay->add_option("--contamination", cfg.contamination, "value | norm | both")
      ->check(CLI::IsMember({"value", "norm", "both"}));
  decay->add_option("--runs", cfg.runs, "runs per grid point");
  decay->add_option("--seed", cfg.seed, "random seed");
  decay->add_option("--n-samples", cfg.n_samples, "samples per run");
  decay->add_option("--grid-size", cfg.grid_size, "grid resolution");
  decay->add_option("--noise-sd", cfg.noise_sd, "response noise standard deviation");

  auto* align = app.add_subcommand("align", "phase-amplitude separation of predictors");
  align->add_option("--data", cfg.data_path, "predictor CSV")->required();
  align->add_option("--out", cfg.out_path, "output directory")->required();
  align->add_option("--max-step", cfg.max_step, "largest DP lattice step");
  align->add_option("--lattice-stride", cfg.lattice_stride, "DP breakpoint stride");

  app.add_flag("-q{0},--quiet{0}", cfg.verbosity, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : efr::exit_usage;
  }

  return efr::run_guarded([&]() -> int {
    if (sim->parsed()) return efr::cmd_simulate(cfg);
    if (fit->parsed()) return efr::cmd_fit(cfg);
    if (pred->parsed()) return efr::cmd_predict(cfg);
    if (cv->parsed()) return efr::cmd_crossval(cfg);
    if (decay->parsed()) return efr::cmd_decay(cfg);
    if (align->parsed()) return efr::cmd_align(cfg);
    return efr::exit_usage;
  });
}
