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
 * Certification from behavior statistics alone, given an assumed dimension:
 * the randomized-discrimination score, the quantum bound and its
 * error-tolerant and lossy generalizations, the frame-potential upper
 * bound, the detection-efficiency lower bound, and the dimension witness.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcert/usd.hpp"

namespace dcert {

/// Everything a certification run established, plus diagnostics.
struct CertificationReport {
    int n_states = 0;
    int d_assumed = 0;
    int order = 0;                       ///< moment order t
    double epsilon_used = 0.0;           ///< global error rate read off the data
    double score = 0.0;                  ///< observed figure of merit
    double bound = 0.0;                  ///< alpha^(2t) Q_t at the assumed dimension
    double gap = 0.0;                    ///< score - bound
    bool design_certified = false;       ///< gap within tolerance
    double frame_potential_upper = 0.0;  ///< certified ceiling on the ensemble's frame potential
    std::optional<double> eta_lower;     ///< certified detection-efficiency floor
    std::optional<int> min_dimension;    ///< smallest dimension consistent with the score
    std::vector<std::string> notes;
};

/// Discrimination success rate of one pair: (p(1|y1) + p(2|y2)) / 2.
double usd_rate(const BehaviorTable& behavior, int y1, int y2);

/**
 * The smallest global error rate consistent with the data: the maximum of
 * both conditional error rates over all pairs. Throws InfeasibleError at or
 * above 1/2, where no certification is possible.
 */
double choose_epsilon(const BehaviorTable& behavior);

/**
 * The figure of merit S = sum over pairs of (alpha(eps) - p_usd)^(2t).
 * At eps = 0 this is the plain inconclusive-rate moment sum. Requires
 * every pair's success rate to stay below alpha(eps) within tolerance.
 */
double score(const BehaviorTable& behavior, int order, double eps);

/**
 * The quantum bound Q_t = (J_t - N) / 2, evaluated on the exact rational
 * path (a single integer division) so that saturating values like 2/3 for
 * (N, d, t) = (4, 2, 2) come out bit-exact.
 */
double quantum_bound(int n_states, int dim, int order);

/**
 * Reads the error rate off the behavior, scores it, compares against
 * alpha^(2t) Q_t at the assumed dimension, and records the verdict. Notes
 * include the saturation-condition diagnostic (eps vs the critical error
 * of the uniform-overlap configuration) when N matches d^2 or d(d+1).
 */
CertificationReport certify_design(const BehaviorTable& behavior, int d_assumed, int order,
                                   double tol = kDefaultTol.saturation);

/// Certified ceiling N + 2 S / alpha^(2t) on the ensemble's frame potential
/// (valid for the fidelity-based extension as well).
double frame_potential_upper(double score_value, double eps, int order, int n_states);

/**
 * The quantum bound under detection efficiency eta:
 * Q_t^eta = (-N + sum_n C(t,n) (1-eta)^(2(t-n)) (eta(2-eta))^n J_n) / 2,
 * evaluated as the same-valued Bernstein average of per-order quantum
 * bounds so the endpoints are exact: Q_t at eta = 1, the pair count at
 * eta = 0. Non-increasing in eta.
 */
double quantum_bound_with_loss(int n_states, int dim, int order, double eta);

/// Right-hand side of the per-pair loss inequality:
/// alpha^2 ((1 - eta)^2 + eta (2 - eta) s^2).
double loss_lemma_rhs(double s, double eps, double eta);

/**
 * The certified detection-efficiency floor: the unique root in [0, 1] of
 * P(eta) = score - alpha^(2t) Q_t^eta, found by monotone bisection
 * (P is non-decreasing in eta). Returns 0 when even eta = 0 is consistent
 * and 1 when the score sits at the quantum bound within tolerance. A score
 * below the quantum bound beyond tolerance is infeasible data.
 */
double certify_efficiency(double score_value, double eps, int n_states, int dim, int order);

/**
 * Closed-form efficiency floor for uniform-overlap ensembles with N = d^2
 * at order 2, clamped to [0, 1]. Agrees with the bisection root. A negative
 * radicand (score below the quantum bound) is infeasible data.
 */
double sic_efficiency_bound(double score_value, double eps, int dim);

/**
 * The smallest dimension d >= 2 whose bound alpha^(2t) max(Q_t, 0) does not
 * exceed the score; a score below the bound at some d proves the true
 * dimension exceeds it. Negative bounds carry no information and clamp
 * to zero, which also terminates the upward search.
 */
int dimension_witness(double score_value, double eps, int n_states, int order);

} // namespace dcert
