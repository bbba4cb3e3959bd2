// Copyright 2026 The design-certify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace dcert {

/**
 * All numerical comparison tolerances used by the library, in one record.
 *
 * Structural checks (norms, traces, Hermiticity, POVM completeness) use
 * `structural`; eigendecomposition-based checks use `spectral`. The
 * remaining members are the per-operation defaults referenced throughout
 * the public interfaces.
 */
struct Tolerances {
    double structural = 1e-9;   ///< norms, traces, Hermiticity, completeness
    double spectral = 1e-8;     ///< eigenvalue residuals and reconstructions
    double design_gap = 1e-7;   ///< frame-potential saturation verdicts
    double saturation = 1e-6;   ///< score-vs-bound certification verdicts
    double bisection = 1e-10;   ///< interval width for root localization
    double parallel = 1e-12;    ///< 1 - |overlap| below which states count as parallel
    double alpha_margin = 1e-6; ///< required distance from the eps = 1/2 singularity
};

inline constexpr Tolerances kDefaultTol{};

} // namespace dcert
