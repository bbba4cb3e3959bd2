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

#include <algorithm>
#include <cmath>

#include "dcert/designs.hpp"
#include "dcert/rng.hpp"
#include "dcert/usd.hpp"
#include "test_util.hpp"

using namespace dcert;

namespace {

// Independent oracle for two-state discrimination with conditional error
// rates promised at most eps: numerical maximization over three-outcome
// qubit measurements. The conclusive elements of an optimal measurement can
// be taken rank-one in the real span of the two states, so the search runs
// over two effect directions and the completeness boundary
// det(1 - a U1 - b U2) = 0, where the best weight a has a closed form.
double best_bounded_error_rate(double s, double eps) {
    const double beta = 0.5 * std::acos(std::clamp(s, -1.0, 1.0));
    const double c = std::cos(beta);
    const double d = std::sin(beta);
    // psi1 = (c, d), psi2 = (c, -d), overlap cos(2 beta) = s.

    const auto overlap2 = [](double ux, double uy, double vx, double vy) {
        const double dot = ux * vx + uy * vy;
        return dot * dot;
    };

    double best = 0.0;
    const auto evaluate = [&](double th1, double th2) {
        const double u1x = std::cos(th1), u1y = std::sin(th1);
        const double u2x = std::cos(th2), u2y = std::sin(th2);
        const double p11 = overlap2(u1x, u1y, c, d);  // |<u1|psi1>|^2
        const double p12 = overlap2(u1x, u1y, c, -d); // |<u1|psi2>|^2
        const double p21 = overlap2(u2x, u2y, c, d);
        const double p22 = overlap2(u2x, u2y, c, -d);

        const double q1 = p11 + p12 <= 0.0 ? 0.0 : p12 / (p11 + p12);
        const double q2 = p21 + p22 <= 0.0 ? 0.0 : p21 / (p21 + p22);
        const bool ok1 = q1 <= eps + 1e-12;
        const bool ok2 = q2 <= eps + 1e-12;
        if (!ok1 && !ok2) return;
        if (!ok2) { // only the first announcing effect usable, at full weight
            best = std::max(best, 0.5 * p11);
            return;
        }
        if (!ok1) {
            best = std::max(best, 0.5 * p22);
            return;
        }

        const double cross = u1x * u2x + u1y * u2y;
        const double g = 1.0 - cross * cross; // sin^2 of the angle between effects
        const auto weight_b = [g](double a) { return (1.0 - a) / (1.0 - a * g); };
        const auto value = [&](double a) { return 0.5 * (a * p11 + weight_b(a) * p22); };

        best = std::max({best, value(0.0), value(1.0)});
        // Interior stationary point of a p11 + b(a) p22 on the boundary.
        if (g > 1e-12 && p11 > 1e-15) {
            const double root = std::sqrt(p22 * (1.0 - g) / p11);
            const double a_star = (1.0 - root) / g;
            if (a_star > 0.0 && a_star < 1.0) best = std::max(best, value(a_star));
        }
    };

    const double pi = 3.14159265358979323846;
    double center1 = 0.0, center2 = 0.0, span = pi;
    const int steps = 240;
    for (int round = 0; round < 3; ++round) {
        double round_best = best;
        double b1 = center1, b2 = center2;
        for (int i = 0; i <= steps; ++i) {
            for (int j = 0; j <= steps; ++j) {
                const double th1 = center1 - span / 2 + span * i / steps;
                const double th2 = center2 - span / 2 + span * j / steps;
                evaluate(th1, th2);
                if (best > round_best) {
                    round_best = best;
                    b1 = th1;
                    b2 = th2;
                }
            }
        }
        center1 = b1;
        center2 = b2;
        span = 4.0 * span / steps;
    }
    return best;
}

} // namespace

TEST_CASE("usd measurement on an orthogonal pair") {
    const CVec zero({Complex{1, 0}, Complex{0, 0}});
    const CVec one({Complex{0, 0}, Complex{1, 0}});
    const Povm3 m = usd_measurement(zero, one);
    const double success =
        0.5 * (born(outer(zero, zero), m.element(Outcome::first)) +
               born(outer(one, one), m.element(Outcome::second)));
    CHECK(success == doctest::Approx(1.0).epsilon(1e-12));
    // The inconclusive element vanishes on the span.
    CHECK(born(outer(zero, zero), m.element(Outcome::inconclusive)) < 1e-12);
    CHECK(born(outer(one, one), m.element(Outcome::inconclusive)) < 1e-12);
}

TEST_CASE("usd measurement on a tetrahedron pair") {
    const StateEnsemble tetra = tetrahedron_sic();
    const CVec& psi1 = tetra.state(0).pure_state();
    const CVec& psi2 = tetra.state(1).pure_state();
    const Povm3 m = usd_measurement(psi1, psi2);
    const double success =
        0.5 * (born(outer(psi1, psi1), m.element(Outcome::first)) +
               born(outer(psi2, psi2), m.element(Outcome::second)));
    CHECK(std::abs(success - (1.0 - 1.0 / std::sqrt(3.0))) < 1e-9);
    CHECK(success == doctest::Approx(0.42265).epsilon(1e-4));
}

TEST_CASE("usd measurement edge cases") {
    const CVec zero({Complex{1, 0}, Complex{0, 0}});
    const Povm3 degenerate = usd_measurement(zero, zero);
    CHECK(born(outer(zero, zero), degenerate.element(Outcome::first)) < 1e-12);
    CHECK(born(outer(zero, zero), degenerate.element(Outcome::second)) < 1e-12);
    CHECK(born(outer(zero, zero), degenerate.element(Outcome::inconclusive)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const CVec unit1({Complex{1, 0}});
    CHECK_THROWS_AS(usd_measurement(unit1, unit1), PreconditionError);
    CHECK_THROWS_AS(usd_measurement(zero, CVec({Complex{0.5, 0}, Complex{0, 0}})),
                    PreconditionError);
}

TEST_CASE("usd measurement validity and achievability over random pairs") {
    Rng rng(314);
    for (int dim = 2; dim <= 8; ++dim) {
        for (int trial = 0; trial < 8; ++trial) {
            const CVec psi1 = testutil::random_pure(dim, rng);
            const CVec psi2 = testutil::random_pure(dim, rng);
            const Povm3 m = usd_measurement(psi1, psi2); // constructor checks PSD + completeness

            // No wrong announcements.
            CHECK(born(outer(psi2, psi2), m.element(Outcome::first)) < 1e-9);
            CHECK(born(outer(psi1, psi1), m.element(Outcome::second)) < 1e-9);

            // Success matches 1 - s.
            const double s = std::abs(inner(psi1, psi2));
            const double success =
                0.5 * (born(outer(psi1, psi1), m.element(Outcome::first)) +
                       born(outer(psi2, psi2), m.element(Outcome::second)));
            CHECK(std::abs(success - usd_optimal_success(s)) < 1e-9);
        }
    }
}

TEST_CASE("scalar formulas") {
    CHECK(usd_optimal_success(0.0) == 1.0);
    CHECK(usd_optimal_success(1.0) == 0.0);

    CHECK(epsilon_critical(0.0) == 0.0);
    CHECK(epsilon_critical(1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(epsilon_critical(1.0 / std::sqrt(3.0)) - 0.09175) < 1e-4);

    CHECK(alpha(0.0) == 1.0);
    CHECK(std::abs(alpha(0.005875) - 1.1735) < 1e-3);
    CHECK(alpha(0.09175) > alpha(0.0));
    CHECK_THROWS_AS(alpha(0.5), PreconditionError);
    CHECK_THROWS_AS(alpha(-0.1), PreconditionError);
}

TEST_CASE("bounded-error success rate") {
    const double s = 1.0 / std::sqrt(3.0);
    CHECK(bounded_error_success(s, 0.0) == doctest::Approx(1.0 - s).epsilon(1e-12));

    // Any eps at or above the critical error (~0.0918 here) selects the
    // error-unconstrained branch.
    const double helstrom = 0.5 * (1.0 + std::sqrt(2.0 / 3.0));
    CHECK(std::abs(bounded_error_success(s, 0.2113) - helstrom) < 1e-9);
    CHECK(std::abs(bounded_error_success(s, 0.10) - helstrom) < 1e-9);
    CHECK(helstrom == doctest::Approx(0.9082).epsilon(1e-4));

    // Both branches agree at the critical error across an overlap grid.
    for (int i = 1; i < 20; ++i) {
        const double sg = i / 20.0;
        const double ec = epsilon_critical(sg);
        const double first_branch = alpha(ec) * (1.0 - sg);
        const double second_branch = 0.5 * (1.0 + std::sqrt(1.0 - sg * sg));
        CHECK(std::abs(first_branch - second_branch) < 1e-9);
    }
}

TEST_CASE("bounded-error success matches the measurement-space oracle") {
    // Numerical maximization over qubit three-outcome measurements under
    // the conditional-error constraints, both branches.
    const struct {
        double s, eps;
    } cases[] = {{0.3, 0.02}, {1.0 / std::sqrt(3.0), 0.05}, {1.0 / std::sqrt(3.0), 0.15},
                 {0.8, 0.04}, {0.8, 0.30}};
    for (const auto& [s, eps] : cases) {
        const double formula = bounded_error_success(s, eps);
        const double oracle = best_bounded_error_rate(s, eps);
        CHECK(oracle <= formula + 1e-6);     // the formula is an upper bound
        CHECK(oracle >= formula - 2e-3);     // and the oracle gets close to it
    }
}

TEST_CASE("bounded-error success is monotone") {
    for (int i = 0; i <= 10; ++i) {
        const double s = i / 10.0;
        double prev = -1.0;
        for (int j = 0; j <= 12; ++j) {
            const double eps = 0.49 * j / 12.0;
            const double p = bounded_error_success(s, eps);
            CHECK(p >= prev - 1e-12);
            prev = p;
        }
    }
    for (int j = 0; j <= 12; ++j) {
        const double eps = 0.45 * j / 12.0;
        double prev = 2.0;
        for (int i = 0; i <= 10; ++i) {
            const double p = bounded_error_success(i / 10.0, eps);
            CHECK(p <= prev + 1e-12);
            prev = p;
        }
    }
}

TEST_CASE("exact simulation of the noiseless tetrahedron") {
    const StateEnsemble tetra = tetrahedron_sic();
    const auto measurements = usd_measurements_for(tetra);
    const BehaviorTable behavior = simulate_behavior(tetra, measurements, NoiseModel{});
    const double expect = 1.0 - 1.0 / std::sqrt(3.0);
    for (const auto& [y1, y2] : state_pairs(4)) {
        const double p = 0.5 * (behavior.prob(y1, y1, y2, Outcome::first) +
                                behavior.prob(y2, y1, y2, Outcome::second));
        CHECK(std::abs(p - expect) < 1e-12);
    }
}

TEST_CASE("exact simulation with noise reproduces the closed-form mixture") {
    const StateEnsemble tetra = tetrahedron_sic();
    const auto measurements = usd_measurements_for(tetra);
    const NoiseModel noise(0.005, 0.55);
    const BehaviorTable behavior = simulate_behavior(tetra, measurements, noise);

    const double s = 1.0 / std::sqrt(3.0);
    const double expect = 0.55 * ((1.0 - 0.005) * (1.0 - s) + 0.005 / 2.0);
    for (const auto& [y1, y2] : state_pairs(4)) {
        const double p = 0.5 * (behavior.prob(y1, y1, y2, Outcome::first) +
                                behavior.prob(y2, y1, y2, Outcome::second));
        CHECK(std::abs(p - expect) < 1e-12);
        CHECK(std::abs(p - 0.2327) < 1e-4);
        // Wrong announcements come only from the random-guess branch.
        CHECK(std::abs(behavior.prob(y2, y1, y2, Outcome::first) - 0.55 * 0.005 / 2.0) < 1e-12);
        CHECK(behavior.prob(y2, y1, y2, Outcome::first) == doctest::Approx(0.001375).epsilon(1e-9));
    }

    // Outcome distributions stay normalized cell by cell.
    for (const auto& [y1, y2] : state_pairs(4)) {
        for (int x = 0; x < 4; ++x) {
            double sum = 0.0;
            for (Outcome b : kOutcomes) sum += behavior.prob(x, y1, y2, b);
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("simulation requires a measurement per pair") {
    const StateEnsemble tetra = tetrahedron_sic();
    auto measurements = usd_measurements_for(tetra);
    measurements.erase({1, 3});
    CHECK_THROWS_AS(simulate_behavior(tetra, measurements, NoiseModel{}), PreconditionError);
}

TEST_CASE("sampled mode concentrates on the exact table") {
    const StateEnsemble tetra = tetrahedron_sic();
    const auto measurements = usd_measurements_for(tetra);
    const NoiseModel noise(0.01, 0.8);
    const BehaviorTable exact = simulate_behavior(tetra, measurements, noise);
    const BehaviorTable sampled =
        simulate_behavior(tetra, measurements, noise, SampleSpec{1000000, 9001});

    for (const auto& [y1, y2] : state_pairs(4)) {
        for (int x = 0; x < 4; ++x) {
            double sum = 0.0;
            for (Outcome b : kOutcomes) {
                CHECK(std::abs(sampled.prob(x, y1, y2, b) - exact.prob(x, y1, y2, b)) < 0.005);
                sum += sampled.prob(x, y1, y2, b);
            }
            CHECK(sum == 1.0); // frequencies sum exactly by construction
        }
    }

    // Same seed, same table.
    const BehaviorTable again =
        simulate_behavior(tetra, measurements, noise, SampleSpec{10000, 9001});
    const BehaviorTable again2 =
        simulate_behavior(tetra, measurements, noise, SampleSpec{10000, 9001});
    for (const auto& [y1, y2] : state_pairs(4)) {
        for (int x = 0; x < 4; ++x) {
            for (Outcome b : kOutcomes) {
                CHECK(again.prob(x, y1, y2, b) == again2.prob(x, y1, y2, b));
            }
        }
    }
}

TEST_CASE("observed error rates") {
    const StateEnsemble tetra = tetrahedron_sic();
    const auto measurements = usd_measurements_for(tetra);

    const BehaviorTable clean = simulate_behavior(tetra, measurements, NoiseModel{});
    for (const auto& [y1, y2] : state_pairs(4)) {
        const ObservedError err = observed_error(clean, y1, y2);
        CHECK(err.q1 < 1e-12);
        CHECK(err.q2 < 1e-12);
    }

    // (gamma/2) / ((1-gamma)(1-s) + gamma), independent of eta.
    const double s = 1.0 / std::sqrt(3.0);
    const double expect = 0.0025 / (0.995 * (1.0 - s) + 0.005);
    const BehaviorTable noisy = simulate_behavior(tetra, measurements, NoiseModel(0.005, 0.55));
    for (const auto& [y1, y2] : state_pairs(4)) {
        const ObservedError err = observed_error(noisy, y1, y2);
        CHECK(std::abs(err.q1 - expect) < 1e-12);
        CHECK(std::abs(err.q2 - expect) < 1e-12);
        CHECK(std::abs(err.q1 - 0.005875) < 1e-5);
    }
    for (double eta : {1.0, 0.7, 0.4, 0.1}) {
        const BehaviorTable b = simulate_behavior(tetra, measurements, NoiseModel(0.005, eta));
        for (const auto& [y1, y2] : state_pairs(4)) {
            CHECK(std::abs(observed_error(b, y1, y2).q1 - expect) < 1e-12);
        }
    }

    // All-inconclusive behavior: zero denominators mean zero error rates.
    BehaviorTable blank(3, 2);
    for (const auto& [y1, y2] : state_pairs(3)) {
        for (int x = 0; x < 3; ++x) blank.set_prob(x, y1, y2, Outcome::inconclusive, 1.0);
    }
    const ObservedError err = observed_error(blank, 0, 1);
    CHECK(err.q1 == 0.0);
    CHECK(err.q2 == 0.0);
}

TEST_CASE("povm constructor rejects invalid collections") {
    CMat half = Complex{0.5, 0.0} * identity(2);
    CHECK_THROWS_AS(Povm3(half, half, half, kDefaultTol), PreconditionError); // sums to 3/2
    CMat neg = Complex{-0.5, 0.0} * identity(2);
    CHECK_THROWS_AS(Povm3(neg, identity(2), Complex{0.5, 0.0} * identity(2), kDefaultTol),
                    PreconditionError);
    CHECK_THROWS_AS(NoiseModel(-0.1, 1.0), PreconditionError);
    CHECK_THROWS_AS(NoiseModel(0.1, 1.5), PreconditionError);
}

TEST_CASE("random povms satisfy the collection invariants") {
    Rng rng(808);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = 2 + static_cast<int>(rng.next_u64() % 3);
        const Povm3 m = testutil::random_povm(dim, rng); // constructor validates
        CMat sum = m.element(Outcome::first) + m.element(Outcome::second) +
                   m.element(Outcome::inconclusive);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                CHECK(std::abs(sum.at(i, j) - (i == j ? Complex{1, 0} : Complex{0, 0})) < 1e-9);
        for (Outcome b : kOutcomes) CHECK(herm_eig(m.element(b)).values.front() >= -1e-9);
    }
}
