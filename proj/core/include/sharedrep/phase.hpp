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

#ifndef SHAREDREP_PHASE_HPP_
#define SHAREDREP_PHASE_HPP_

#include <string>

namespace sharedrep {

// Consistency regions of the scaling parameterization n = k^beta,
// M = k^{gamma+1}, d = k^{delta+1}:
//   I   (beta+gamma < delta+1):  estimation impossible
//   III (beta+gamma >= delta+1, 2beta+gamma < delta+2): impossible
//   IV  (beta+gamma >= delta+1, 2beta+gamma >= delta+2): possible
//   II  (beta+gamma >= delta+2): the sub-region of IV already known to be
//       possible before the optimal-rate analysis
// Boundary points go to the possible (higher-numbered consistent) region.
enum class PhaseRegion { kI = 1, kII = 2, kIII = 3, kIV = 4 };

PhaseRegion classify_phase(double beta, double gamma, double delta);

std::string to_string(PhaseRegion region);

}  // namespace sharedrep

#endif  // SHAREDREP_PHASE_HPP_
