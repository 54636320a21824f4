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

#include "sharedrep/rate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sharedrep/error.hpp"

namespace sharedrep {

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw DimensionError("quantile: empty input");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

RateFit fit_rate_exponent(const std::vector<std::pair<double, double>>& samples) {
  RateFit fit;
  std::map<double, std::vector<double>> by_x;
  for (const auto& [x, y] : samples) {
    if (x <= 0.0 || y <= 0.0) {
      ++fit.filtered;
      continue;
    }
    by_x[x].push_back(y);
  }
  if (by_x.size() < 3)
    throw DimensionError("fit_rate_exponent: need >= 3 distinct positive x values");

  std::vector<double> lx, ly;
  for (auto& [x, ys] : by_x) {
    lx.push_back(std::log(x));
    ly.push_back(std::log(median(std::move(ys))));
  }

  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
    syy += ly[i] * ly[i];
  }
  const double var_x = sxx - sx * sx / n;
  const double var_y = syy - sy * sy / n;
  const double cov = sxy - sx * sy / n;
  if (var_x <= 0.0)
    throw NumericError("fit_rate_exponent: degenerate x values");
  fit.slope = cov / var_x;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r2 = var_y > 0.0 ? cov * cov / (var_x * var_y) : 1.0;
  return fit;
}

}  // namespace sharedrep
