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

/**
 * @file
 * Bounds for stochastic projective strategies in randomized two-state
 * discrimination, and certification of non-projectiveness from the
 * order-2 score of four qubit preparations.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "dcert/designs.hpp"

namespace dcert {

/// Per-pair orthogonality indicators in lexicographic pair order: true iff
/// the pair's overlap magnitude is at most the structural tolerance.
using OrthoFlags = std::vector<bool>;
OrthoFlags ortho_flags(const StateEnsemble& ens, const Tolerances& tol = kDefaultTol);

/// Best success rate of stochastic projective strategies on a pair with
/// overlap magnitude s: (1 - s^2 + tau) / 2, where tau marks exactly
/// orthogonal pairs (which projective measurements distinguish perfectly).
double projective_usd_success(double s, bool tau);

/**
 * Best projective performance on an ensemble: the sum over pairs of
 * (1 - p)^(2t) with p the projective success rate. Evaluated both directly
 * and through its binomial expansion in frame potentials; the two routes
 * must agree within the structural tolerance.
 */
double projective_score(const StateEnsemble& ens, int order);

/// The binomial-expansion route on its own, exposed for cross-checking.
double projective_score_expanded(const StateEnsemble& ens, int order);

struct ProjectiveBound {
    double value = 0.0;      ///< minimized projective score (32/27 for four qubit states)
    double relaxation = 0.0; ///< the weaker bound from frame potentials alone (11/10)
    StateEnsemble minimizer; ///< the configuration achieving the minimum
    bool converged = false;
};

/**
 * Minimizes the order-2 projective score over four qubit states using the
 * Bloch-angle parameterization (two angles per state), multistart descent
 * with central-difference gradients. The minimizing configuration is a
 * tetrahedron of Bloch vectors with all squared overlaps 1/3, giving 32/27;
 * the frame-potential relaxation yields the weaker 11/10 and is reported
 * alongside.
 */
ProjectiveBound projective_bound_422(int restarts = 120, std::uint64_t seed = 7);

/**
 * Detection efficiency at which a lossy ideal implementation of the
 * four-state qubit experiment stops certifying non-projectiveness: the
 * root of 6 (1 - eta (1 - 1/sqrt(3)))^4 = 32/27, which is (3 + sqrt 3)/6.
 */
double nonprojective_threshold();

/// True iff an order-2 score of four qubit preparations is strictly below
/// the projective floor 32/27 by more than tol.
bool certify_nonprojective(double score2, double tol = kDefaultTol.saturation);

} // namespace dcert
