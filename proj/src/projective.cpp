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

#include "dcert/projective.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dcert/rng.hpp"
#include "binomial.hpp"
#include "parallel.hpp"

namespace dcert {

namespace {

constexpr double kProjectiveFloor422 = 32.0 / 27.0;

} // namespace

OrthoFlags ortho_flags(const StateEnsemble& ens, const Tolerances& tol) {
    OrthoFlags flags;
    flags.reserve(static_cast<std::size_t>(pair_count(ens.size())));
    for (const auto& [i, j] : state_pairs(ens.size())) {
        flags.push_back(state_fidelity(ens.state(i), ens.state(j), tol) <= tol.structural);
    }
    return flags;
}

double projective_usd_success(double s, bool tau) {
    if (s < 0.0 || s > 1.0) throw PreconditionError("projective_usd_success: overlap outside [0, 1]");
    return 0.5 * (1.0 - s * s + (tau ? 1.0 : 0.0));
}

namespace {

double projective_score_direct(const StateEnsemble& ens, int order, const Tolerances& tol) {
    double total = 0.0;
    for (const auto& [i, j] : state_pairs(ens.size())) {
        const double s = state_fidelity(ens.state(i), ens.state(j), tol);
        const bool tau = s <= tol.structural;
        total += ipow(1.0 - projective_usd_success(s, tau), 2 * order);
    }
    return total;
}

} // namespace

double projective_score_expanded(const StateEnsemble& ens, int order) {
    if (order < 0) throw PreconditionError("projective_score_expanded: negative order");
    const int n = ens.size();
    const double scale = ipow(0.5, 2 * order);

    double moment_sum = 0.0;
    for (int k = 1; k <= 2 * order; ++k) {
        moment_sum += static_cast<double>(detail::binomial_saturating(2 * order, k)) *
                      (frame_potential(ens, k) - static_cast<double>(n));
    }

    double non_ortho = 0.0;
    for (bool tau : ortho_flags(ens)) non_ortho += tau ? 0.0 : 1.0;

    return 0.5 * scale * moment_sum + scale * non_ortho;
}

double projective_score(const StateEnsemble& ens, int order) {
    if (order < 0) throw PreconditionError("projective_score: negative order");
    const double direct = projective_score_direct(ens, order, kDefaultTol);
    const double expanded = projective_score_expanded(ens, order);
    if (std::abs(direct - expanded) > kDefaultTol.structural * (1.0 + std::abs(direct))) {
        throw Error("projective_score: direct and expanded evaluations disagree");
    }
    return direct;
}

namespace {

// Objective over Bloch angles (theta, phi) per state, order 2, four states.
// Squared overlap of two Bloch directions: (1 + n_i . n_j) / 2.
double angle_objective(const std::array<double, 8>& angles) {
    std::array<std::array<double, 3>, 4> n;
    for (int i = 0; i < 4; ++i) {
        const double th = angles[static_cast<std::size_t>(2 * i)];
        const double ph = angles[static_cast<std::size_t>(2 * i + 1)];
        n[static_cast<std::size_t>(i)] = {std::sin(th) * std::cos(ph),
                                          std::sin(th) * std::sin(ph), std::cos(th)};
    }
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const auto& a = n[static_cast<std::size_t>(i)];
            const auto& b = n[static_cast<std::size_t>(j)];
            const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            const double s2 = 0.5 * (1.0 + dot);
            const bool tau = s2 <= kDefaultTol.structural * kDefaultTol.structural;
            const double p = 0.5 * (1.0 - s2 + (tau ? 1.0 : 0.0));
            const double r = 1.0 - p;
            total += r * r * r * r;
        }
    }
    return total;
}

struct AngleDescent {
    std::array<double, 8> angles{};
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
};

AngleDescent descend_angles(std::array<double, 8> angles, int max_iter) {
    double f = angle_objective(angles);
    double step = 0.2;
    const double h = 1e-6;

    for (int iter = 0; iter < max_iter; ++iter) {
        std::array<double, 8> grad{};
        double gnorm2 = 0.0;
        for (std::size_t i = 0; i < angles.size(); ++i) {
            std::array<double, 8> up = angles;
            std::array<double, 8> down = angles;
            up[i] += h;
            down[i] -= h;
            grad[i] = (angle_objective(up) - angle_objective(down)) / (2.0 * h);
            gnorm2 += grad[i] * grad[i];
        }
        if (std::sqrt(gnorm2) <= 1e-9) return {angles, f, true};

        bool moved = false;
        while (step > 1e-14) {
            std::array<double, 8> trial = angles;
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] -= step * grad[i];
            const double ft = angle_objective(trial);
            if (ft <= f - 1e-4 * step * gnorm2) {
                angles = trial;
                f = ft;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) return {angles, f, true};
        step = std::min(step * 1.5, 0.5);
    }
    return {angles, f, false};
}

StateEnsemble ensemble_from_angles(const std::array<double, 8>& angles) {
    std::vector<std::array<double, 3>> vertices;
    vertices.reserve(4);
    for (int i = 0; i < 4; ++i) {
        const double th = angles[static_cast<std::size_t>(2 * i)];
        const double ph = angles[static_cast<std::size_t>(2 * i + 1)];
        vertices.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                            std::cos(th)});
    }
    return bloch_ensemble(vertices);
}

} // namespace

ProjectiveBound projective_bound_422(int restarts, std::uint64_t seed) {
    if (restarts < 1) throw PreconditionError("projective_bound_422: restarts must be >= 1");

    std::vector<AngleDescent> results(static_cast<std::size_t>(restarts));
    detail::parallel_for(restarts, [&](int r) {
        Rng rng(Rng::derive(seed, {0x70726fULL, static_cast<std::uint64_t>(r)}));
        std::array<double, 8> angles{};
        for (std::size_t i = 0; i < angles.size(); ++i) {
            // theta in (0, pi), phi in [0, 2 pi)
            angles[i] = (i % 2 == 0) ? std::acos(1.0 - 2.0 * rng.uniform())
                                     : 6.283185307179586477 * rng.uniform();
        }
        results[static_cast<std::size_t>(r)] = descend_angles(angles, 5000);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r) {
        if (results[r].value < results[best].value) best = r;
    }

    ProjectiveBound out{0.0, 0.0, ensemble_from_angles(results[best].angles),
                        results[best].converged};
    out.value = projective_score(out.minimizer, 2);

    // Weaker floor from the frame-potential bounds alone, no orthogonalities:
    // (1/2^(2t+1)) sum_k C(2t, k) (J_k - N) + pairs / 2^(2t) at t = 2.
    double moment_sum = 0.0;
    for (int k = 1; k <= 4; ++k) {
        moment_sum += static_cast<double>(detail::binomial_saturating(4, k)) *
                      (design_bound(4, 2, k).value - 4.0);
    }
    out.relaxation = moment_sum / 32.0 + 6.0 / 16.0;
    return out;
}

double nonprojective_threshold() {
    // Score of a lossy ideal implementation as a function of efficiency;
    // strictly decreasing, so the crossing with the projective floor is a
    // bisection away.
    const double drop = 1.0 - 1.0 / std::sqrt(3.0);
    const auto lossy_score = [drop](double eta) {
        const double r = 1.0 - eta * drop;
        return 6.0 * r * r * r * r;
    };
    double lo = 0.0; // score above the floor
    double hi = 1.0; // score below the floor
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (lossy_score(mid) > kProjectiveFloor422 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool certify_nonprojective(double score2, double tol) {
    if (score2 < 0.0) throw PreconditionError("certify_nonprojective: negative score");
    return score2 < kProjectiveFloor422 - tol;
}

} // namespace dcert
