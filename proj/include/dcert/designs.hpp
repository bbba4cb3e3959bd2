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
 * State ensembles, frame potentials, design bounds and checks, named
 * ensemble constructors, and numerical frame-potential minimization.
 */

#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "dcert/qmath.hpp"
#include "dcert/tolerances.hpp"

namespace dcert {

/// One labeled preparation: either a pure state vector or a density matrix.
class State {
  public:
    static State pure(CVec psi) { return State(std::move(psi)); }
    static State mixed(CMat rho) { return State(std::move(rho)); }

    bool is_pure() const { return std::holds_alternative<CVec>(value_); }
    const CVec& pure_state() const { return std::get<CVec>(value_); }
    const CMat& density() const { return std::get<CMat>(value_); }

    int dim() const { return is_pure() ? pure_state().dim() : density().dim(); }
    /// |psi><psi| for pure entries, the stored matrix otherwise.
    CMat to_density() const;

  private:
    explicit State(CVec psi) : value_(std::move(psi)) {}
    explicit State(CMat rho) : value_(std::move(rho)) {}
    std::variant<CVec, CMat> value_;
};

/// Root fidelity between two preparations; |<a|b>| when both are pure.
double state_fidelity(const State& a, const State& b, const Tolerances& tol = kDefaultTol);

/**
 * N labeled d-dimensional preparations, the object being certified.
 * Construction validates that N >= 2, that every entry lives in dimension
 * d, that pure entries are normalized, and that mixed entries are valid
 * density matrices.
 */
class StateEnsemble {
  public:
    StateEnsemble(int dim, std::vector<State> states, const Tolerances& tol = kDefaultTol);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(states_.size()); }
    const State& state(int x) const { return states_[static_cast<std::size_t>(x)]; }
    const std::vector<State>& states() const { return states_; }
    bool all_pure() const;

  private:
    int dim_;
    std::vector<State> states_;
};

/// Lexicographic enumeration of the N(N-1)/2 index pairs (y1, y2), y1 < y2.
std::vector<std::pair<int, int>> state_pairs(int n_states);
int pair_count(int n_states);

/// Frame-potential lower bound J for given ensemble size, dimension and order.
struct DesignBound {
    int n_states = 0;
    int dim = 0;
    int order = 0;
    double value = 0.0;
};

/**
 * Frame potential of the ensemble at the given order: the double sum of
 * F(rho_j, rho_k)^(2 order) over all ordered pairs including the diagonal,
 * with F the root fidelity (the plain overlap magnitude on pure pairs).
 * Order 0 gives N^2; every ensemble satisfies the bound value >= J.
 */
double frame_potential(const StateEnsemble& ens, int order);

/**
 * The bound J = N^2 t!(d-1)!/(t+d-1)!, evaluated exactly as the rational
 * N^2 / C(t+d-1, t) before a single conversion to double. Saturation at
 * every order up to t characterizes quantum t-designs. Rejects
 * t + d - 1 > 20 to stay within exact integer arithmetic.
 */
DesignBound design_bound(int n_states, int dim, int order);

struct DesignCheck {
    bool is_design = false;
    double gap = 0.0; ///< frame_potential(ens, t) - J_t
};

/// True iff the frame potential saturates the design bound (within tol) at
/// every order n <= t. Checking all lower orders guards numerical error.
DesignCheck is_t_design(const StateEnsemble& ens, int order,
                        double tol = kDefaultTol.design_gap);

/// The four qubit states with uniform pairwise squared overlap 1/3 (a
/// minimal 2-design; Bloch vectors point at tetrahedron vertices).
StateEnsemble tetrahedron_sic();

/**
 * The d(d+1) states of a complete set of mutually unbiased bases in prime
 * dimension d <= 13: the computational basis plus d phase-rotated bases.
 * Inter-basis squared overlaps all equal 1/d; the set is a 2-design.
 */
StateEnsemble mub_ensemble(int dim);

/// Qubit states with the given unit Bloch vectors; squared overlaps equal
/// (1 + n_i . n_j) / 2.
StateEnsemble bloch_ensemble(const std::vector<std::array<double, 3>>& vertices);

/// Haar-distributed pure states, deterministic per seed.
StateEnsemble random_ensemble(int n_states, int dim, std::uint64_t seed);

/**
 * Objective used by the minimizer and by gradient tests: the double sum
 * of |<z_j|z_k>|^(2 order) over all ordered pairs including the diagonal,
 * taken on raw (not necessarily normalized) coordinates.
 */
double frame_potential_raw(const std::vector<CVec>& states, int order);

/**
 * Analytic gradient of frame_potential_raw. Entry a of state j holds the
 * partial derivatives with respect to (Re z_j[a], Im z_j[a]) as the real
 * and imaginary parts:
 *
 *   G_j[a] = 4 t sum_k |g_jk|^(2(t-1)) g_kj z_k[a],   g_jk = <z_j|z_k>.
 */
std::vector<CVec> frame_potential_gradient(const std::vector<CVec>& states, int order);

struct MinimizeResult {
    StateEnsemble ensemble;
    double value = 0.0;
    bool converged = false; ///< every restart that produced the best value hit its gradient target
};

/**
 * Multistart projected gradient descent for the frame potential: descent on
 * unnormalized complex coordinates with per-step renormalization, analytic
 * gradient, backtracking line search, and an iteration cap of 10^4 per
 * restart. Restarts draw independent substreams from (seed, restart index)
 * and may execute in parallel; the best value wins with ties broken by
 * restart index, so the result is scheduling-independent.
 */
MinimizeResult minimize_frame_potential(int n_states, int dim, int order, int restarts,
                                        std::uint64_t seed);

} // namespace dcert
