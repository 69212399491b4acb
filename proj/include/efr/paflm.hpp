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

#include "efr/alignment.hpp"
#include "efr/dataset.hpp"
#include "efr/dp_align.hpp"
#include "efr/flm.hpp"
#include "efr/warping.hpp"

namespace efr {

/// Pre-aligned functional linear model: phase-amplitude separation of the
/// training predictors (responses play no role in the alignment), then an
/// FLM on the amplitudes. Test functions are aligned to the stored training
/// template before prediction.
struct PaflmModel {
  FlmModel flm;
  DiscretizedFunction template_srvf;
  DpOptions dp;
};

inline PaflmModel fit_paflm(const Dataset& data, const BasisSystem& basis,
                            const DpOptions& dp = {}) {
  CompleteAlignmentResult ca = complete_alignment(data.predictors, dp);
  Dataset aligned = Dataset::create(std::move(ca.amplitudes), data.responses);
  return PaflmModel{fit_flm(aligned, basis), std::move(ca.template_srvf), dp};
}

inline double predict_paflm(const PaflmModel& m, const DiscretizedFunction& f) {
  const Warping gamma = dp_align(m.template_srvf, srvf(f), m.dp);
  return predict_flm(m.flm, value_action(f, gamma));
}

}  // namespace efr
