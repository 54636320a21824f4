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

#include "sharedrep/phase.hpp"

#include "sharedrep/error.hpp"

namespace sharedrep {

PhaseRegion classify_phase(double beta, double gamma, double delta) {
  if (beta <= 0.0 || gamma <= 0.0 || delta <= 0.0)
    throw ConfigError("classify_phase: exponents must be positive");
  const double bg = beta + gamma;
  if (bg < delta + 1.0) return PhaseRegion::kI;
  if (bg >= delta + 2.0) return PhaseRegion::kII;
  if (2.0 * beta + gamma >= delta + 2.0) return PhaseRegion::kIV;
  return PhaseRegion::kIII;
}

std::string to_string(PhaseRegion region) {
  switch (region) {
    case PhaseRegion::kI:
      return "I";
    case PhaseRegion::kII:
      return "II";
    case PhaseRegion::kIII:
      return "III";
    case PhaseRegion::kIV:
      return "IV";
  }
  return "?";
}

}  // namespace sharedrep
