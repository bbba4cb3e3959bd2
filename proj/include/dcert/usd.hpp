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
 * Two-state discrimination primitives: the optimal unambiguous measurement,
 * bounded-error formulas, the noise model, and behavior-table simulation.
 */

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dcert/designs.hpp"
#include "dcert/qmath.hpp"

namespace dcert {

/// The three outcomes of a discrimination measurement: announce the first
/// hypothesis, announce the second, or declare the round inconclusive.
enum class Outcome { first = 0, second = 1, inconclusive = 2 };

inline constexpr std::array<Outcome, 3> kOutcomes{Outcome::first, Outcome::second,
                                                  Outcome::inconclusive};

/**
 * A three-outcome measurement. Construction validates that every element is
 * PSD within the structural tolerance and that the elements sum to the
 * identity within the structural tolerance.
 */
class Povm3 {
  public:
    Povm3(CMat first, CMat second, CMat inconclusive, const Tolerances& tol = kDefaultTol);

    int dim() const { return elements_[0].dim(); }
    const CMat& element(Outcome b) const { return elements_[static_cast<std::size_t>(b)]; }

  private:
    std::array<CMat, 3> elements_;
};

/// Random-guess rate gamma and detection efficiency eta, both in [0, 1].
/// Failed detections are reported as inconclusive outcomes.
struct NoiseModel {
    double gamma = 0.0;
    double eta = 1.0;

    NoiseModel() = default;
    NoiseModel(double gamma_rate, double efficiency);
};

/**
 * The full conditional distribution p(b | x, y): for every preparation
 * label x, every pair y = (y1, y2) with y1 < y2, and every outcome b.
 * This table is the only certification input. Indices are 0-based in code;
 * the file format (io.hpp) uses 1-based labels.
 */
class BehaviorTable {
  public:
    BehaviorTable(int n_states, int dim);

    int n_states() const { return n_; }
    int dim() const { return dim_; }

    double prob(int x, int y1, int y2, Outcome b) const;
    void set_prob(int x, int y1, int y2, Outcome b, double p);

    /// Every (x, y) row must sum to 1 within the structural tolerance and
    /// every entry must lie in [0, 1] within it.
    void validate(const Tolerances& tol = kDefaultTol) const;

  private:
    int cell_index(int x, int y1, int y2) const;

    int n_;
    int dim_;
    std::vector<std::array<double, 3>> cells_;
};

/**
 * The optimal unambiguous measurement for a pair of pure states, built on
 * the two-dimensional span of the pair (orthonormalized by stabilized
 * Gram-Schmidt) with the orthogonal complement absorbed into the
 * inconclusive element. Announcing outcomes never err:
 * p(first | psi2) = p(second | psi1) = 0, and the success rate equals
 * 1 - |<psi1|psi2>|.
 *
 * Parallel states yield the valid degenerate measurement (both announcing
 * elements zero) except in dimension 1, where no span exists and a
 * PreconditionError is thrown.
 */
Povm3 usd_measurement(const CVec& psi1, const CVec& psi2, const Tolerances& tol = kDefaultTol);

/// 1 - s for overlap magnitude s.
double usd_optimal_success(double s);

/// The error rate below which the bounded-error optimum keeps its
/// unambiguous form: (1 - sqrt(1 - s^2)) / 2.
double epsilon_critical(double s);

/**
 * The bounded-error amplification factor
 * (1 - eps) / (1 - 2 eps)^2 * (1 + 2 sqrt(eps (1 - eps))),
 * monotonically increasing with alpha(0) = 1. Defined for
 * 0 <= eps <= 1/2 - alpha_margin; the factor diverges at eps = 1/2.
 */
double alpha(double eps);

/// Optimal two-state discrimination success rate when both conditional
/// error rates are promised at most eps: alpha(eps) (1 - s) below the
/// critical error, (1 + sqrt(1 - s^2)) / 2 above it.
double bounded_error_success(double s, double eps);

/// The optimal unambiguous measurement for every pair of a pure ensemble.
std::map<std::pair<int, int>, Povm3> usd_measurements_for(const StateEnsemble& ens,
                                                          const Tolerances& tol = kDefaultTol);

/// shots == 0 requests the exact analytic table; shots > 0 draws that many
/// rounds per (x, y) cell, each cell on its own substream of `seed`.
struct SampleSpec {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

/**
 * Simulates one round per cell under the noise model: with probability
 * 1 - eta the device reports inconclusive; otherwise with probability gamma
 * it announces a uniformly random conclusive outcome; otherwise it follows
 * the Born rule for the pair's measurement. Exact mode stores the mixture
 * analytically; sampled mode stores empirical frequencies (which sum to 1
 * by construction). A measurement must be supplied for every pair.
 */
BehaviorTable simulate_behavior(const StateEnsemble& ens,
                                const std::map<std::pair<int, int>, Povm3>& measurements,
                                const NoiseModel& noise, const SampleSpec& mode = {});

struct ObservedError {
    double q1 = 0.0;
    double q2 = 0.0;
};

/**
 * Conditional error rates of a pair read off the behavior:
 * q1 = p(1|y2) / (p(1|y1) + p(1|y2)) and symmetrically for q2. A zero
 * denominator yields zero (no announcements of an outcome means no errors
 * of that kind). Detection efficiency cancels in these ratios.
 */
ObservedError observed_error(const BehaviorTable& behavior, int y1, int y2);

} // namespace dcert
