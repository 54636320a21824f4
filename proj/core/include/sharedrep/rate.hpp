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

#ifndef SHAREDREP_RATE_HPP_
#define SHAREDREP_RATE_HPP_

#include <utility>
#include <vector>

namespace sharedrep {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;  // in log space
  double r2 = 0.0;
  int filtered = 0;  // non-positive observations dropped with a warning flag
};

// Ordinary least squares of log(median y) on log(x).  Observations are
// grouped by distinct x and reduced to the median; at least three distinct
// positive x values are required.
RateFit fit_rate_exponent(const std::vector<std::pair<double, double>>& samples);

// Linearly interpolated quantile of a copy of `values`; p in [0, 1].
double quantile(std::vector<double> values, double p);

inline double median(std::vector<double> values) {
  return quantile(std::move(values), 0.5);
}

}  // namespace sharedrep

#endif  // SHAREDREP_RATE_HPP_
