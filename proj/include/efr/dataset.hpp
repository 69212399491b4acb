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

#include "efr/errors.hpp"
#include "efr/grid.hpp"

namespace efr {

/// Paired functional predictors and scalar responses on a shared grid.
struct Dataset {
  std::vector<DiscretizedFunction> predictors;
  std::vector<double> responses;

  static Dataset create(std::vector<DiscretizedFunction> predictors,
                        std::vector<double> responses) {
    if (predictors.empty()) throw EmptyList("dataset must contain at least one sample");
    if (predictors.size() != responses.size())
      throw InvalidArgument("predictor and response counts differ");
    const Grid g = predictors.front().grid;
    for (const auto& f : predictors) detail::require_same_grid(g, f.grid);
    return Dataset{std::move(predictors), std::move(responses)};
  }

  int size() const { return static_cast<int>(predictors.size()); }
  Grid grid() const { return predictors.front().grid; }

  Dataset subset(const std::vector<int>& indices) const {
    std::vector<DiscretizedFunction> p;
    std::vector<double> y;
    p.reserve(indices.size());
    y.reserve(indices.size());
    for (int i : indices) {
      p.push_back(predictors[i]);
      y.push_back(responses[i]);
    }
    return Dataset::create(std::move(p), std::move(y));
  }
};

}  // namespace efr
