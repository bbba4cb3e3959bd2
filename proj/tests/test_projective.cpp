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

#include <doctest.h>

#include <cmath>

#include "dcert/certify.hpp"
#include "dcert/projective.hpp"
#include "dcert/rng.hpp"
#include "dcert/usd.hpp"
#include "test_util.hpp"

using namespace dcert;

namespace {

// Independent check of the projective success formula through Born-rule
// machinery: a zero-error deterministic projective strategy must announce
// an outcome only from a basis vector orthogonal to the other state, so the
// admissible bases are {psi2_perp, psi2} (announce the first state) and
// {psi1_perp, psi1} (announce the second). Stochastic strategies are convex
// mixtures, so the best rate is the best over these and, for orthogonal
// pairs, the shared eigenbasis.
double best_projective_rate(const CVec& psi1, const CVec& psi2) {
    const double s = std::abs(inner(psi1, psi2));
    if (s <= 1e-9) return 1.0; // shared eigenbasis identifies both perfectly

    const CVec perp2 = normalized(psi1 - inner(psi2, psi1) * psi2); // orthogonal to psi2
    const CVec perp1 = normalized(psi2 - inner(psi1, psi2) * psi1); // orthogonal to psi1
    const CMat rho1 = outer(psi1, psi1);
    const CMat rho2 = outer(psi2, psi2);

    // Basis A announces "first" on perp2 only: rate (p(1|psi1) + 0) / 2.
    const double rate_a = 0.5 * born(rho1, outer(perp2, perp2));
    // Basis B announces "second" on perp1 only.
    const double rate_b = 0.5 * born(rho2, outer(perp1, perp1));
    // Mixtures interpolate linearly, so the maximum sits at an endpoint.
    return std::max(rate_a, rate_b);
}

} // namespace

TEST_CASE("projective success rate formula") {
    CHECK(projective_usd_success(0.0, true) == 1.0);
    CHECK(projective_usd_success(1.0, false) == 0.0);
    CHECK(std::abs(projective_usd_success(1.0 / std::sqrt(3.0), false) - 1.0 / 3.0) < 1e-12);
    CHECK_THROWS_AS(projective_usd_success(1.5, false), PreconditionError);
}

TEST_CASE("projective success matches the strategy-level oracle") {
    Rng rng(246);
    for (int trial = 0; trial < 40; ++trial) {
        const CVec psi1 = testutil::random_pure(2, rng);
        const CVec psi2 = testutil::random_pure(2, rng);
        const double s = std::abs(inner(psi1, psi2));
        const double formula = projective_usd_success(s, s <= 1e-9);
        CHECK(std::abs(best_projective_rate(psi1, psi2) - formula) < 1e-9);
    }
    // Orthogonal pair: both states identified perfectly.
    const CVec zero({Complex{1, 0}, Complex{0, 0}});
    const CVec one({Complex{0, 0}, Complex{1, 0}});
    CHECK(best_projective_rate(zero, one) == 1.0);
    CHECK(projective_usd_success(0.0, true) == 1.0);
}

TEST_CASE("projective score on known ensembles") {
    CHECK(std::abs(projective_score(tetrahedron_sic(), 2) - 32.0 / 27.0) < 1e-9);

    std::vector<State> pair;
    pair.push_back(State::pure(CVec({Complex{1, 0}, Complex{0, 0}})));
    pair.push_back(State::pure(CVec({Complex{0, 0}, Complex{1, 0}})));
    CHECK(projective_score(StateEnsemble(2, std::move(pair)), 2) == 0.0);
}

TEST_CASE("direct and expanded projective scores agree") {
    Rng rng(1357);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 4);
        const int d = 2 + static_cast<int>(rng.next_u64() % 3);
        const int t = 1 + static_cast<int>(rng.next_u64() % 3);
        const StateEnsemble ens = random_ensemble(n, d, rng.next_u64());
        const double direct = projective_score(ens, t); // cross-checks internally
        const double expanded = projective_score_expanded(ens, t);
        CHECK(std::abs(direct - expanded) < 1e-9 * (1.0 + std::abs(direct)));
    }
    // Including an ensemble with exact orthogonalities.
    const StateEnsemble octa = bloch_ensemble(testutil::octahedron_vertices());
    CHECK(std::abs(projective_score(octa, 2) - projective_score_expanded(octa, 2)) < 1e-9);
}

TEST_CASE("random qubit four-ensembles respect the projective floor") {
    Rng rng(97531);
    for (int trial = 0; trial < 300; ++trial) {
        const StateEnsemble ens = random_ensemble(4, 2, rng.next_u64());
        CHECK(projective_score(ens, 2) >= 32.0 / 27.0 - 1e-6);
    }
}

TEST_CASE("projective floor minimization") {
    const ProjectiveBound bound = projective_bound_422(120, 20260808);
    CHECK(std::abs(bound.value - 32.0 / 27.0) < 1e-5);
    CHECK(std::abs(bound.relaxation - 11.0 / 10.0) < 1e-9);

    // The minimizer is a tetrahedron: every squared overlap is 1/3.
    for (const auto& [i, j] : state_pairs(4)) {
        const double s = state_fidelity(bound.minimizer.state(i), bound.minimizer.state(j));
        CHECK(std::abs(s * s - 1.0 / 3.0) < 1e-3);
    }
    CHECK_THROWS_AS(projective_bound_422(0, 1), PreconditionError);
}

TEST_CASE("non-projectiveness threshold") {
    const double threshold = nonprojective_threshold();
    CHECK(std::abs(threshold - (3.0 + std::sqrt(3.0)) / 6.0) < 1e-10);
    CHECK(std::abs(threshold - 0.78868) < 1e-5);
    CHECK(threshold > 0.0);
    CHECK(threshold < 1.0);

    // The defining equation holds at the root, and the lossless score sits
    // well below the floor.
    const double drop = 1.0 - 1.0 / std::sqrt(3.0);
    const double at_root = 6.0 * ipow(1.0 - threshold * drop, 4);
    CHECK(std::abs(at_root - 32.0 / 27.0) < 1e-9);
    CHECK(std::abs(6.0 * ipow(1.0 - drop, 4) - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("non-projectiveness certification") {
    CHECK(certify_nonprojective(2.0 / 3.0));

    // Lossy ideal implementations: eta = 0.70 scores above the floor,
    // eta = 0.85 below it.
    const double drop = 1.0 - 1.0 / std::sqrt(3.0);
    const double at_70 = 6.0 * ipow(1.0 - 0.70 * drop, 4);
    const double at_85 = 6.0 * ipow(1.0 - 0.85 * drop, 4);
    CHECK(at_70 > 32.0 / 27.0);
    CHECK(at_85 < 32.0 / 27.0);
    CHECK_FALSE(certify_nonprojective(at_70));
    CHECK(certify_nonprojective(at_85));

    // End to end: a lossy simulated behavior scored at order 2.
    const StateEnsemble tetra = tetrahedron_sic();
    const auto measurements = usd_measurements_for(tetra);
    const BehaviorTable lossy =
        simulate_behavior(tetra, measurements, NoiseModel(0.0, 0.85));
    CHECK(certify_nonprojective(score(lossy, 2, 0.0)));
    const BehaviorTable lossier =
        simulate_behavior(tetra, measurements, NoiseModel(0.0, 0.70));
    CHECK_FALSE(certify_nonprojective(score(lossier, 2, 0.0)));
}
