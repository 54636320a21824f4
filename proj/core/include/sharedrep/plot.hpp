//
// Copyright 2026 The shared-rep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SHAREDREP_PLOT_HPP_
#define SHAREDREP_PLOT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "sharedrep/sweep.hpp"

namespace sharedrep {

// fig2_style: sin-theta error vs k          (homogeneous setup)
// fig3_style: sin-theta error vs k          (heterogeneous setup)
// fig4_style: sin-theta error vs M
// fig5_style: transfer (theta) error vs M, including the independent series
enum class FigureRecipe { kFig2, kFig3, kFig4, kFig5 };

FigureRecipe parse_recipe(const std::string& name);
std::string recipe_name(FigureRecipe recipe);

// One CSV per estimator series with header x,median,q25,q75,mean, plus an
// optional standalone SVG line chart.  Byte-deterministic given the rows.
// With no rows, a single header-only CSV is written.
std::vector<std::filesystem::path> emit_plot_data(
    const SweepResult& result, const std::vector<ConfigKey>& configs,
    FigureRecipe recipe, const std::filesystem::path& out_dir, bool svg = false);

}  // namespace sharedrep

#endif  // SHAREDREP_PLOT_HPP_
