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

#include "dcert/usd.hpp"

#include <cmath>
#include <string>

#include "dcert/rng.hpp"

namespace dcert {

Povm3::Povm3(CMat first, CMat second, CMat inconclusive, const Tolerances& tol)
    : elements_{std::move(first), std::move(second), std::move(inconclusive)} {
    const int d = elements_[0].dim();
    if (elements_[1].dim() != d || elements_[2].dim() != d) {
        throw PreconditionError("Povm3: elements differ in dimension");
    }
    CMat sum(d);
    for (const CMat& e : elements_) {
        if (!is_positive_semidefinite(e, tol)) {
            throw PreconditionError("Povm3: element is not positive semidefinite");
        }
        sum = sum + e;
    }
    const CMat residual = sum - identity(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (std::abs(residual.at(i, j)) > tol.structural) {
                throw PreconditionError("Povm3: elements do not sum to the identity");
            }
        }
    }
}

NoiseModel::NoiseModel(double gamma_rate, double efficiency)
    : gamma(gamma_rate), eta(efficiency) {
    if (gamma < 0.0 || gamma > 1.0) throw PreconditionError("NoiseModel: gamma outside [0, 1]");
    if (eta < 0.0 || eta > 1.0) throw PreconditionError("NoiseModel: eta outside [0, 1]");
}

BehaviorTable::BehaviorTable(int n_states, int dim) : n_(n_states), dim_(dim) {
    if (n_ < 2) throw PreconditionError("BehaviorTable: needs at least two preparations");
    if (dim_ < 1) throw PreconditionError("BehaviorTable: bad dimension");
    cells_.resize(static_cast<std::size_t>(n_) * static_cast<std::size_t>(pair_count(n_)),
                  {0.0, 0.0, 0.0});
}

int BehaviorTable::cell_index(int x, int y1, int y2) const {
    if (x < 0 || x >= n_ || y1 < 0 || y2 <= y1 || y2 >= n_) {
        throw PreconditionError("BehaviorTable: cell (" + std::to_string(x) + ", " +
                                std::to_string(y1) + ", " + std::to_string(y2) +
                                ") out of range");
    }
    const int pair_index = y1 * (2 * n_ - y1 - 1) / 2 + (y2 - y1 - 1);
    return pair_index * n_ + x;
}

double BehaviorTable::prob(int x, int y1, int y2, Outcome b) const {
    return cells_[static_cast<std::size_t>(cell_index(x, y1, y2))][static_cast<std::size_t>(b)];
}

void BehaviorTable::set_prob(int x, int y1, int y2, Outcome b, double p) {
    cells_[static_cast<std::size_t>(cell_index(x, y1, y2))][static_cast<std::size_t>(b)] = p;
}

void BehaviorTable::validate(const Tolerances& tol) const {
    for (const auto& cell : cells_) {
        double sum = 0.0;
        for (double p : cell) {
            if (p < -tol.structural || p > 1.0 + tol.structural) {
                throw PreconditionError("BehaviorTable: probability outside [0, 1]");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > tol.structural) {
            throw PreconditionError("BehaviorTable: outcome probabilities do not sum to 1");
        }
    }
}

Povm3 usd_measurement(const CVec& psi1, const CVec& psi2, const Tolerances& tol) {
    if (psi1.dim() != psi2.dim()) throw PreconditionError("usd_measurement: dimension mismatch");
    if (std::abs(norm_squared(psi1) - 1.0) > tol.structural ||
        std::abs(norm_squared(psi2) - 1.0) > tol.structural) {
        throw PreconditionError("usd_measurement: states must be normalized");
    }
    const int d = psi1.dim();
    const Complex g = inner(psi1, psi2);
    const double s = std::min(1.0, std::abs(g));

    const CVec w1 = psi1 - inner(psi2, psi1) * psi2;
    const CVec w2 = psi2 - inner(psi1, psi2) * psi1;
    const double wn2 = norm_squared(w1);

    if (wn2 <= 2.0 * tol.parallel) { // 1 - s below the parallel tolerance
        if (d == 1) {
            throw PreconditionError("usd_measurement: parallel states in dimension 1 span nothing");
        }
        return Povm3(CMat(d), CMat(d), identity(d), tol);
    }

    // Within the span, the announcing elements are rank-one projectors onto
    // the complement of the state they must never fire on, scaled by
    // 1/(1 + s). Building them from the orthogonalized vectors keeps the
    // forbidden-state probability at the squared-roundoff level.
    const CVec u1 = normalized(w1);
    const CVec u2 = normalized(w2);
    const Complex inv = Complex{1.0 / (1.0 + s), 0.0};
    CMat m1 = inv * outer(u1, u1);
    CMat m2 = inv * outer(u2, u2);
    CMat mp = identity(d) - m1 - m2;
    return Povm3(std::move(m1), std::move(m2), std::move(mp), tol);
}

double usd_optimal_success(double s) {
    if (s < 0.0 || s > 1.0) throw PreconditionError("usd_optimal_success: overlap outside [0, 1]");
    return 1.0 - s;
}

double epsilon_critical(double s) {
    if (s < 0.0 || s > 1.0) throw PreconditionError("epsilon_critical: overlap outside [0, 1]");
    return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - s * s)));
}

double alpha(double eps) {
    if (eps < 0.0 || eps > 0.5 - kDefaultTol.alpha_margin) {
        throw PreconditionError("alpha: error rate outside [0, 1/2)");
    }
    const double one_minus_2eps = 1.0 - 2.0 * eps;
    return (1.0 - eps) / (one_minus_2eps * one_minus_2eps) *
           (1.0 + 2.0 * std::sqrt(eps * (1.0 - eps)));
}

double bounded_error_success(double s, double eps) {
    if (s < 0.0 || s > 1.0) throw PreconditionError("bounded_error_success: overlap outside [0, 1]");
    if (eps <= epsilon_critical(s)) return alpha(eps) * (1.0 - s);
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - s * s)));
}

std::map<std::pair<int, int>, Povm3> usd_measurements_for(const StateEnsemble& ens,
                                                          const Tolerances& tol) {
    if (!ens.all_pure()) {
        throw PreconditionError("usd_measurements_for: optimal measurements need a pure ensemble");
    }
    std::map<std::pair<int, int>, Povm3> out;
    for (const auto& [i, j] : state_pairs(ens.size())) {
        out.emplace(std::make_pair(i, j),
                    usd_measurement(ens.state(i).pure_state(), ens.state(j).pure_state(), tol));
    }
    return out;
}

BehaviorTable simulate_behavior(const StateEnsemble& ens,
                                const std::map<std::pair<int, int>, Povm3>& measurements,
                                const NoiseModel& noise, const SampleSpec& mode) {
    NoiseModel checked(noise.gamma, noise.eta); // range-validates copied values
    const int n = ens.size();
    BehaviorTable table(n, ens.dim());

    std::vector<CMat> densities;
    densities.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) densities.push_back(ens.state(x).to_density());

    for (const auto& [y1, y2] : state_pairs(n)) {
        const auto it = measurements.find({y1, y2});
        if (it == measurements.end()) {
            throw PreconditionError("simulate_behavior: no measurement for pair (" +
                                    std::to_string(y1) + ", " + std::to_string(y2) + ")");
        }
        const Povm3& povm = it->second;
        if (povm.dim() != ens.dim()) {
            throw PreconditionError("simulate_behavior: measurement dimension mismatch");
        }

        for (int x = 0; x < n; ++x) {
            const double b1 = born(densities[static_cast<std::size_t>(x)], povm.element(Outcome::first));
            const double b2 = born(densities[static_cast<std::size_t>(x)], povm.element(Outcome::second));
            const double bp = born(densities[static_cast<std::size_t>(x)],
                                   povm.element(Outcome::inconclusive));
            const double keep = checked.eta * (1.0 - checked.gamma);
            const double guess = checked.eta * checked.gamma;
            const double p1 = keep * b1 + guess * 0.5;
            const double p2 = keep * b2 + guess * 0.5;
            const double pp = (1.0 - checked.eta) + keep * bp;

            if (mode.shots == 0) {
                table.set_prob(x, y1, y2, Outcome::first, p1);
                table.set_prob(x, y1, y2, Outcome::second, p2);
                table.set_prob(x, y1, y2, Outcome::inconclusive, pp);
            } else {
                Rng rng(Rng::derive(mode.seed, {static_cast<std::uint64_t>(x),
                                                static_cast<std::uint64_t>(y1),
                                                static_cast<std::uint64_t>(y2)}));
                std::uint64_t c1 = 0;
                std::uint64_t c2 = 0;
                for (std::uint64_t shot = 0; shot < mode.shots; ++shot) {
                    const double u = rng.uniform();
                    if (u < p1) {
                        ++c1;
                    } else if (u < p1 + p2) {
                        ++c2;
                    }
                }
                const double shots = static_cast<double>(mode.shots);
                const double f1 = static_cast<double>(c1) / shots;
                const double f2 = static_cast<double>(c2) / shots;
                table.set_prob(x, y1, y2, Outcome::first, f1);
                table.set_prob(x, y1, y2, Outcome::second, f2);
                table.set_prob(x, y1, y2, Outcome::inconclusive, 1.0 - (f1 + f2));
            }
        }
    }
    table.validate();
    return table;
}

ObservedError observed_error(const BehaviorTable& behavior, int y1, int y2) {
    const double p1_correct = behavior.prob(y1, y1, y2, Outcome::first);
    const double p1_wrong = behavior.prob(y2, y1, y2, Outcome::first);
    const double p2_correct = behavior.prob(y2, y1, y2, Outcome::second);
    const double p2_wrong = behavior.prob(y1, y1, y2, Outcome::second);

    ObservedError err;
    const double den1 = p1_correct + p1_wrong;
    const double den2 = p2_correct + p2_wrong;
    err.q1 = den1 <= 0.0 ? 0.0 : p1_wrong / den1;
    err.q2 = den2 <= 0.0 ? 0.0 : p2_wrong / den2;
    return err;
}

} // namespace dcert
