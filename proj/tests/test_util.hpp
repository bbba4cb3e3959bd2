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

#include <array>
#include <cmath>
#include <vector>

#include "dcert/designs.hpp"
#include "dcert/qmath.hpp"
#include "dcert/rng.hpp"
#include "dcert/usd.hpp"

namespace dcert::testutil {

inline CVec random_pure(int dim, Rng& rng) {
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Complex{rng.normal(), rng.normal()};
    return normalized(v);
}

inline CMat random_hermitian(int dim, Rng& rng) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) {
        m.at(i, i) = Complex{rng.normal(), 0.0};
        for (int j = i + 1; j < dim; ++j) {
            const Complex z{rng.normal(), rng.normal()};
            m.at(i, j) = z;
            m.at(j, i) = std::conj(z);
        }
    }
    return m;
}

// Ginibre construction: G G^dagger normalized to unit trace.
inline CMat random_density(int dim, Rng& rng) {
    CMat g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g.at(i, j) = Complex{rng.normal(), rng.normal()};
    CMat rho = g * adjoint(g);
    const double tr = trace(rho).real();
    return Complex{1.0 / tr, 0.0} * rho;
}

inline StateEnsemble random_mixed_ensemble(int n_states, int dim, Rng& rng) {
    std::vector<State> states;
    for (int x = 0; x < n_states; ++x) states.push_back(State::mixed(random_density(dim, rng)));
    return StateEnsemble(dim, std::move(states));
}

// A random valid three-outcome POVM: three Ginibre-style PSD matrices pushed
// through S^{-1/2} . S^{-1/2} with S their sum, which makes them complete.
inline Povm3 random_povm(int dim, Rng& rng) {
    std::array<CMat, 3> parts{CMat(dim), CMat(dim), CMat(dim)};
    for (auto& part : parts) {
        CMat g(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) g.at(i, j) = Complex{rng.normal(), rng.normal()};
        part = g * adjoint(g);
    }
    CMat sum = parts[0] + parts[1] + parts[2];
    const EigenSystem es = herm_eig(sum);
    CMat inv_sqrt(dim);
    for (int k = 0; k < dim; ++k) {
        const double lam = es.values[static_cast<std::size_t>(k)];
        const double r = 1.0 / std::sqrt(lam);
        const CVec& v = es.vectors[static_cast<std::size_t>(k)];
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) inv_sqrt.at(i, j) += r * v[i] * std::conj(v[j]);
    }
    return Povm3(inv_sqrt * parts[0] * inv_sqrt, inv_sqrt * parts[1] * inv_sqrt,
                 inv_sqrt * parts[2] * inv_sqrt);
}

inline std::vector<std::array<double, 3>> octahedron_vertices() {
    return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

inline std::vector<std::array<double, 3>> tetrahedron_vertices() {
    const double r = 1.0 / std::sqrt(3.0);
    return {{r, r, r}, {r, -r, -r}, {-r, r, -r}, {-r, -r, r}};
}

inline std::vector<std::array<double, 3>> icosahedron_vertices() {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const double n = std::sqrt(1.0 + phi * phi);
    std::vector<std::array<double, 3>> out;
    for (double a : {-1.0, 1.0}) {
        for (double b : {-phi, phi}) {
            out.push_back({0.0, a / n, b / n});
            out.push_back({a / n, b / n, 0.0});
            out.push_back({b / n, 0.0, a / n});
        }
    }
    return out;
}

} // namespace dcert::testutil
