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

#include "dcert/designs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dcert/rng.hpp"
#include "binomial.hpp"
#include "parallel.hpp"

namespace dcert {

namespace {

constexpr double kTwoPi = 6.283185307179586477;

bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

} // namespace

CMat State::to_density() const {
    if (is_pure()) return outer(pure_state(), pure_state());
    return density();
}

double state_fidelity(const State& a, const State& b, const Tolerances& tol) {
    if (a.is_pure() && b.is_pure()) return std::min(1.0, std::abs(inner(a.pure_state(), b.pure_state())));
    return fidelity(a.to_density(), b.to_density(), tol);
}

StateEnsemble::StateEnsemble(int dim, std::vector<State> states, const Tolerances& tol)
    : dim_(dim), states_(std::move(states)) {
    if (dim_ < 1 || dim_ > kMaxDim) throw PreconditionError("StateEnsemble: bad dimension");
    if (states_.size() < 2) throw PreconditionError("StateEnsemble: needs at least two states");
    for (std::size_t x = 0; x < states_.size(); ++x) {
        const State& st = states_[x];
        if (st.dim() != dim_) {
            throw PreconditionError("StateEnsemble: state " + std::to_string(x) +
                                    " has dimension " + std::to_string(st.dim()));
        }
        if (st.is_pure()) {
            if (std::abs(norm_squared(st.pure_state()) - 1.0) > tol.structural) {
                throw PreconditionError("StateEnsemble: state " + std::to_string(x) +
                                        " is not normalized");
            }
        } else if (!is_density_matrix(st.density(), tol)) {
            throw PreconditionError("StateEnsemble: state " + std::to_string(x) +
                                    " is not a valid density matrix");
        }
    }
}

bool StateEnsemble::all_pure() const {
    return std::all_of(states_.begin(), states_.end(), [](const State& s) { return s.is_pure(); });
}

std::vector<std::pair<int, int>> state_pairs(int n_states) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(pair_count(n_states)));
    for (int i = 0; i < n_states; ++i)
        for (int j = i + 1; j < n_states; ++j) pairs.emplace_back(i, j);
    return pairs;
}

int pair_count(int n_states) { return n_states * (n_states - 1) / 2; }

double frame_potential(const StateEnsemble& ens, int order) {
    if (order < 0) throw PreconditionError("frame_potential: negative order");
    const int n = ens.size();
    // Diagonal fidelities are identically 1; off-diagonal ones are symmetric.
    double v = static_cast<double>(n);
    for (const auto& [j, k] : state_pairs(n)) {
        const double f = state_fidelity(ens.state(j), ens.state(k));
        v += 2.0 * ipow(f * f, order);
    }
    return v;
}

DesignBound design_bound(int n_states, int dim, int order) {
    if (n_states < 1) throw PreconditionError("design_bound: need at least one state");
    if (dim < 2) throw PreconditionError("design_bound: dimension must be at least 2");
    if (order < 0) throw PreconditionError("design_bound: negative order");
    if (order + dim - 1 > 20) {
        throw PreconditionError("design_bound: order + dim - 1 exceeds the exact-arithmetic range");
    }
    const std::uint64_t b = detail::binomial_saturating(order + dim - 1, order);
    const double n = static_cast<double>(n_states);
    return DesignBound{n_states, dim, order, n * n / static_cast<double>(b)};
}

DesignCheck is_t_design(const StateEnsemble& ens, int order, double tol) {
    if (tol <= 0.0) throw PreconditionError("is_t_design: tolerance must be positive");
    DesignCheck check;
    check.is_design = true;
    check.gap = 0.0;
    for (int n = 1; n <= order; ++n) {
        const double gap = frame_potential(ens, n) - design_bound(ens.size(), ens.dim(), n).value;
        if (gap > tol) check.is_design = false;
        if (n == order) check.gap = gap;
    }
    return check;
}

StateEnsemble tetrahedron_sic() {
    const double a = 1.0 / std::sqrt(3.0);
    const double b = std::sqrt(2.0 / 3.0);
    std::vector<State> states;
    states.push_back(State::pure(CVec({Complex{1.0, 0.0}, Complex{0.0, 0.0}})));
    for (int k = 0; k < 3; ++k) {
        const double phi = kTwoPi * k / 3.0;
        states.push_back(State::pure(CVec({Complex{a, 0.0}, b * std::exp(Complex{0.0, phi})})));
    }
    return StateEnsemble(2, std::move(states));
}

StateEnsemble mub_ensemble(int dim) {
    if (!is_prime(dim) || dim > 13) {
        throw PreconditionError("mub_ensemble: dimension must be prime and at most 13");
    }
    std::vector<State> states;
    const double root = 1.0 / std::sqrt(static_cast<double>(dim));

    for (int j = 0; j < dim; ++j) {
        CVec e(dim);
        e[j] = 1.0;
        states.push_back(State::pure(std::move(e)));
    }

    if (dim == 2) {
        // The quadratic-phase construction below needs odd characteristic;
        // in dimension two the rotated bases are the X and Y eigenbases.
        const Complex i{0.0, 1.0};
        states.push_back(State::pure(CVec({root, root})));
        states.push_back(State::pure(CVec({root, -root})));
        states.push_back(State::pure(CVec({root, root * i})));
        states.push_back(State::pure(CVec({root, -root * i})));
    } else {
        for (int k = 0; k < dim; ++k) {
            for (int j = 0; j < dim; ++j) {
                CVec v(dim);
                for (int l = 0; l < dim; ++l) {
                    const double phase = kTwoPi * ((k * l * l + j * l) % dim) / dim;
                    v[l] = root * std::exp(Complex{0.0, phase});
                }
                states.push_back(State::pure(std::move(v)));
            }
        }
    }
    return StateEnsemble(dim, std::move(states));
}

StateEnsemble bloch_ensemble(const std::vector<std::array<double, 3>>& vertices) {
    std::vector<State> states;
    states.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& v = vertices[i];
        const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (std::abs(r - 1.0) > kDefaultTol.structural) {
            throw PreconditionError("bloch_ensemble: vertex " + std::to_string(i) +
                                    " is not unit-norm");
        }
        const double theta = std::acos(std::clamp(v[2], -1.0, 1.0));
        const double phi = std::atan2(v[1], v[0]);
        states.push_back(State::pure(CVec(
            {Complex{std::cos(theta / 2.0), 0.0},
             std::sin(theta / 2.0) * std::exp(Complex{0.0, phi})})));
    }
    return StateEnsemble(2, std::move(states));
}

namespace {

std::vector<CVec> random_raw_states(int n_states, int dim, Rng& rng) {
    std::vector<CVec> states;
    states.reserve(static_cast<std::size_t>(n_states));
    for (int x = 0; x < n_states; ++x) {
        CVec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = Complex{rng.normal(), rng.normal()};
        states.push_back(normalized(v));
    }
    return states;
}

} // namespace

StateEnsemble random_ensemble(int n_states, int dim, std::uint64_t seed) {
    if (n_states < 2) throw PreconditionError("random_ensemble: needs at least two states");
    Rng rng(Rng::derive(seed, {0x656e73ULL}));
    std::vector<CVec> raw = random_raw_states(n_states, dim, rng);
    std::vector<State> states;
    states.reserve(raw.size());
    for (auto& v : raw) states.push_back(State::pure(std::move(v)));
    return StateEnsemble(dim, std::move(states));
}

double frame_potential_raw(const std::vector<CVec>& states, int order) {
    if (order < 0) throw PreconditionError("frame_potential_raw: negative order");
    const int n = static_cast<int>(states.size());
    // Diagonal terms: |<z_j|z_j>|^(2 order) = (|z_j|^2)^(2 order).
    double v = 0.0;
    for (int j = 0; j < n; ++j) {
        const double nj = norm_squared(states[static_cast<std::size_t>(j)]);
        v += ipow(nj * nj, order);
    }
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const double g2 = std::norm(
                inner(states[static_cast<std::size_t>(j)], states[static_cast<std::size_t>(k)]));
            v += 2.0 * ipow(g2, order);
        }
    }
    return v;
}

std::vector<CVec> frame_potential_gradient(const std::vector<CVec>& states, int order) {
    if (order < 0) throw PreconditionError("frame_potential_gradient: negative order");
    const int n = static_cast<int>(states.size());
    const int d = n > 0 ? states[0].dim() : 0;

    std::vector<CVec> grad(static_cast<std::size_t>(n), CVec(std::max(d, 1)));
    if (order == 0) {
        for (auto& g : grad)
            for (int i = 0; i < g.dim(); ++i) g[i] = 0.0;
        return grad;
    }

    std::vector<Complex> gram(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            gram[static_cast<std::size_t>(j) * n + k] =
                inner(states[static_cast<std::size_t>(j)], states[static_cast<std::size_t>(k)]);

    for (int j = 0; j < n; ++j) {
        CVec g(d);
        for (int k = 0; k < n; ++k) {
            const Complex gjk = gram[static_cast<std::size_t>(j) * n + k];
            const Complex gkj = gram[static_cast<std::size_t>(k) * n + j];
            const Complex w = 4.0 * order * ipow(std::norm(gjk), order - 1) * gkj;
            for (int i = 0; i < d; ++i) g[i] += w * states[static_cast<std::size_t>(k)][i];
        }
        grad[static_cast<std::size_t>(j)] = std::move(g);
    }
    return grad;
}

namespace {

struct DescentOutcome {
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
};

// Projected gradient descent with backtracking on the unit-norm product
// manifold. States stay normalized; the tangent projection removes the
// radial (and global-phase) component of the gradient per state.
DescentOutcome descend(std::vector<CVec>& states, int order, int max_iter) {
    for (auto& s : states) s = normalized(s);
    double f = frame_potential_raw(states, order);
    double step = 0.25;
    const double armijo = 1e-4;

    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<CVec> grad = frame_potential_gradient(states, order);
        double grad_norm2 = 0.0;
        for (std::size_t j = 0; j < states.size(); ++j) {
            const Complex radial = inner(states[j], grad[j]);
            grad[j] = grad[j] - radial * states[j];
            grad_norm2 += norm_squared(grad[j]);
        }
        if (std::sqrt(grad_norm2) <= 1e-10 * (1.0 + std::abs(f))) return {f, true};

        bool moved = false;
        while (step > 1e-16) {
            std::vector<CVec> trial = states;
            for (std::size_t j = 0; j < trial.size(); ++j) {
                trial[j] = normalized(trial[j] - Complex{step, 0.0} * grad[j]);
            }
            const double ft = frame_potential_raw(trial, order);
            if (ft <= f - armijo * step * grad_norm2) {
                states = std::move(trial);
                f = ft;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) return {f, true}; // no descent direction left at this scale
        step = std::min(step * 1.5, 1.0);
    }
    return {f, false};
}

} // namespace

MinimizeResult minimize_frame_potential(int n_states, int dim, int order, int restarts,
                                        std::uint64_t seed) {
    if (restarts < 1) throw PreconditionError("minimize_frame_potential: restarts must be >= 1");
    if (n_states < 2) throw PreconditionError("minimize_frame_potential: needs at least two states");
    if (order < 0) throw PreconditionError("minimize_frame_potential: negative order");

    constexpr int kMaxIter = 10000;
    struct Candidate {
        double value = std::numeric_limits<double>::infinity();
        bool converged = false;
        std::vector<CVec> states;
    };
    std::vector<Candidate> results(static_cast<std::size_t>(restarts));

    detail::parallel_for(restarts, [&](int r) {
        Rng rng(Rng::derive(seed, {0x6d696eULL, static_cast<std::uint64_t>(r)}));
        std::vector<CVec> states = random_raw_states(n_states, dim, rng);
        const DescentOutcome out = descend(states, order, kMaxIter);
        results[static_cast<std::size_t>(r)] = {out.value, out.converged, std::move(states)};
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r) {
        if (results[r].value < results[best].value) best = r;
    }

    std::vector<State> states;
    states.reserve(results[best].states.size());
    for (auto& v : results[best].states) states.push_back(State::pure(normalized(v)));
    StateEnsemble ens(dim, std::move(states));
    const double value = frame_potential(ens, order);
    return MinimizeResult{std::move(ens), value, results[best].converged};
}

} // namespace dcert
