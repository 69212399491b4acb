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

#include <fstream>
#include <string>

#include <json.hpp>

#include "efr/efrm.hpp"
#include "efr/errors.hpp"
#include "efr/simulate.hpp"

namespace efr {

/// Serialized model schema: basis (kind, J, order), grid size, coefficient
/// vector, index polynomial, warp mode, alignment knobs and fit
/// diagnostics. Training warps are diagnostics held in memory only.
inline nlohmann::json efrm_to_json(const EfrmModel& m) {
  return nlohmann::json{
      {"format", "efr-model"},
      {"version", 1},
      {"basis",
       {{"kind", to_string(m.basis.kind)},
        {"J", m.basis.J},
        {"order", m.basis.order},
        {"grid_size", m.basis.grid.n_points}}},
      {"coefficients", m.c},
      {"index_function", {{"degree", m.h.degree}, {"coefficients", m.h.coefficients}}},
      {"mode", to_string(m.mode)},
      {"alignment", {{"max_step", m.dp.max_step}, {"lattice_stride", m.dp.lattice_stride}}},
      {"diagnostics",
       {{"final_cost", m.diagnostics.final_cost},
        {"training_rmse", m.diagnostics.training_rmse},
        {"outer_iterations", m.diagnostics.outer_iterations},
        {"converged", m.diagnostics.converged}}}};
}

inline EfrmModel efrm_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "efr-model") throw InvalidArgument("not an efr model document");
  const auto& jb = j.at("basis");
  const Grid grid = Grid::of_size(jb.at("grid_size").get<int>());
  const BasisKind kind = basis_kind_from_string(jb.at("kind").get<std::string>());
  const int J = jb.at("J").get<int>();
  const int order = jb.value("order", 4);

  EfrmModel m;
  m.basis = (kind == BasisKind::fourier) ? fourier_basis(J, grid) : bspline_basis(J, grid, order);
  m.c = j.at("coefficients").get<std::vector<double>>();
  if (static_cast<int>(m.c.size()) != J) throw InvalidArgument("model coefficient count mismatch");
  const auto& jh = j.at("index_function");
  m.h = IndexPolynomial::make(jh.at("degree").get<int>(),
                              jh.at("coefficients").get<std::vector<double>>());
  m.mode = warp_mode_from_string(j.at("mode").get<std::string>());
  if (j.contains("alignment")) {
    m.dp.max_step = j["alignment"].value("max_step", 7);
    m.dp.lattice_stride = j["alignment"].value("lattice_stride", 1);
  }
  if (j.contains("diagnostics")) {
    const auto& jd = j["diagnostics"];
    m.diagnostics.final_cost = jd.value("final_cost", 0.0);
    m.diagnostics.training_rmse = jd.value("training_rmse", 0.0);
    m.diagnostics.outer_iterations = jd.value("outer_iterations", 0);
    m.diagnostics.converged = jd.value("converged", false);
  }
  return m;
}

inline void save_efrm(const EfrmModel& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << efrm_to_json(m).dump(2) << "\n";
  if (!f) throw IoError("failed writing '" + path + "'");
}

inline EfrmModel load_efrm(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path, 0, e.what());
  }
  return efrm_from_json(j);
}

/// Ground-truth sidecar written by the simulate command, for later error
/// evaluation against fitted models.
inline nlohmann::json truth_to_json(const SimTruth& t) {
  nlohmann::json warps = nlohmann::json::array();
  for (const auto& g : t.warps) warps.push_back(g.values);
  nlohmann::json clean = nlohmann::json::array();
  for (const auto& f : t.clean_predictors) clean.push_back(f.values);
  return nlohmann::json{
      {"beta", t.beta.values},
      {"beta_coefficients", t.beta_coefficients},
      {"h", {{"degree", t.h.degree}, {"coefficients", t.h.coefficients}}},
      {"warps", warps},
      {"clean_predictors", clean}};
}

}  // namespace efr
