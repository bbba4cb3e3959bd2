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

#include "dcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "binomial.hpp"

namespace dcert {

namespace {

// (N^2 - N B) / (2 B) with B = C(t+d-1, t): one division of exact integers,
// so saturating values are correctly rounded doubles of the true rational.
double quantum_bound_rational(int n_states, std::uint64_t binom) {
    const std::int64_t n = n_states;
    const std::int64_t b = static_cast<std::int64_t>(binom);
    return static_cast<double>(n * n - n * b) / static_cast<double>(2 * b);
}

// Like quantum_bound but without the documented order + dim - 1 <= 20 cap;
// the dimension witness walks d upward past it. Saturated binomials make the
// bound negative, which the caller clamps anyway.
double quantum_bound_any(int n_states, int dim, int order) {
    const std::uint64_t b = detail::binomial_saturating(order + dim - 1, order);
    if (b > (std::uint64_t{1} << 40)) return -0.5 * static_cast<double>(n_states);
    return quantum_bound_rational(n_states, b);
}

} // namespace

double usd_rate(const BehaviorTable& behavior, int y1, int y2) {
    return 0.5 * (behavior.prob(y1, y1, y2, Outcome::first) +
                  behavior.prob(y2, y1, y2, Outcome::second));
}

double choose_epsilon(const BehaviorTable& behavior) {
    double eps = 0.0;
    for (const auto& [y1, y2] : state_pairs(behavior.n_states())) {
        const ObservedError err = observed_error(behavior, y1, y2);
        eps = std::max({eps, err.q1, err.q2});
    }
    if (eps >= 0.5 - kDefaultTol.alpha_margin) {
        throw InfeasibleError("choose_epsilon: observed error rate " + std::to_string(eps) +
                              " leaves no certification");
    }
    // Analytic tables carry roundoff dirt in the forbidden-outcome cells;
    // rates at that level are exact zeros, and alpha's sqrt(eps) growth
    // would otherwise amplify them past the certification tolerances.
    return eps < 1e-12 ? 0.0 : eps;
}

double score(const BehaviorTable& behavior, int order, double eps) {
    if (order < 0) throw PreconditionError("score: negative order");
    const double a = alpha(eps);
    double s = 0.0;
    for (const auto& [y1, y2] : state_pairs(behavior.n_states())) {
        const double p = usd_rate(behavior, y1, y2);
        if (p > a + kDefaultTol.structural) {
            throw PreconditionError("score: pair success rate exceeds alpha(eps)");
        }
        s += ipow(a - p, 2 * order);
    }
    return s;
}

double quantum_bound(int n_states, int dim, int order) {
    const DesignBound jb = design_bound(n_states, dim, order); // validates and caps
    return quantum_bound_rational(jb.n_states,
                                  detail::binomial_saturating(order + dim - 1, order));
}

CertificationReport certify_design(const BehaviorTable& behavior, int d_assumed, int order,
                                   double tol) {
    CertificationReport report;
    report.n_states = behavior.n_states();
    report.d_assumed = d_assumed;
    report.order = order;

    const double eps = choose_epsilon(behavior);
    const double a = alpha(eps);
    report.epsilon_used = eps;
    report.score = score(behavior, order, eps);
    report.bound = ipow(a, 2 * order) * quantum_bound(report.n_states, d_assumed, order);
    report.gap = report.score - report.bound;
    report.design_certified = report.gap <= tol;
    report.frame_potential_upper =
        frame_potential_upper(report.score, eps, order, report.n_states);

    std::ostringstream note;
    note.precision(6);
    note << "eps=" << eps << " alpha=" << a;
    report.notes.push_back(note.str());

    // Saturation diagnostic: the bound is attainable only when eps stays at
    // or below the critical error of the target configuration's overlap.
    double common_overlap = -1.0;
    if (report.n_states == d_assumed * d_assumed) {
        common_overlap = 1.0 / std::sqrt(static_cast<double>(d_assumed) + 1.0);
    } else if (report.n_states == d_assumed * (d_assumed + 1)) {
        common_overlap = 1.0 / std::sqrt(static_cast<double>(d_assumed));
    }
    if (common_overlap > 0.0) {
        const double ec = epsilon_critical(common_overlap);
        std::ostringstream sat;
        sat.precision(6);
        sat << "saturation condition eps <= eps_c: eps=" << eps << " eps_c=" << ec << " -> "
            << (eps <= ec ? "satisfied" : "violated");
        report.notes.push_back(sat.str());
    }
    return report;
}

double frame_potential_upper(double score_value, double eps, int order, int n_states) {
    if (score_value < 0.0) throw PreconditionError("frame_potential_upper: negative score");
    return static_cast<double>(n_states) + 2.0 * score_value / ipow(alpha(eps), 2 * order);
}

double quantum_bound_with_loss(int n_states, int dim, int order, double eta) {
    if (eta < 0.0 || eta > 1.0) {
        throw PreconditionError("quantum_bound_with_loss: eta outside [0, 1]");
    }
    // Bernstein form of the binomial expansion: the average of the per-order
    // quantum bounds Q_n under Binomial(t, eta (2 - eta)) weights. Identical
    // value, and the endpoints reproduce Q_t and the pair count bit-exactly.
    const double u = (1.0 - eta) * (1.0 - eta);
    const double w = 1.0 - u;
    double sum = 0.0;
    for (int k = 0; k <= order; ++k) {
        const double weight = static_cast<double>(detail::binomial_saturating(order, k)) *
                              ipow(u, order - k) * ipow(w, k);
        if (weight == 0.0) continue;
        sum += weight * quantum_bound(n_states, dim, k);
    }
    return sum;
}

double loss_lemma_rhs(double s, double eps, double eta) {
    if (s < 0.0 || s > 1.0) throw PreconditionError("loss_lemma_rhs: overlap outside [0, 1]");
    if (eta < 0.0 || eta > 1.0) throw PreconditionError("loss_lemma_rhs: eta outside [0, 1]");
    const double a = alpha(eps);
    return a * a * ((1.0 - eta) * (1.0 - eta) + eta * (2.0 - eta) * s * s);
}

double certify_efficiency(double score_value, double eps, int n_states, int dim, int order) {
    if (score_value < 0.0) throw PreconditionError("certify_efficiency: negative score");
    const double a2t = ipow(alpha(eps), 2 * order);
    const double bound_at_one = a2t * quantum_bound(n_states, dim, order);
    if (score_value < bound_at_one - kDefaultTol.structural) {
        throw InfeasibleError("certify_efficiency: score below the quantum bound");
    }

    const auto shortfall = [&](double eta) {
        return score_value - a2t * quantum_bound_with_loss(n_states, dim, order, eta);
    };

    if (shortfall(0.0) >= 0.0) return 0.0; // even a dead detector is consistent
    if (shortfall(1.0) <= 0.0) return 1.0; // score at the quantum bound within tolerance

    double lo = 0.0; // shortfall < 0: inconsistent
    double hi = 1.0; // shortfall > 0: consistent
    while (hi - lo > kDefaultTol.bisection) {
        const double mid = 0.5 * (lo + hi);
        (shortfall(mid) >= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double sic_efficiency_bound(double score_value, double eps, int dim) {
    if (dim < 2) throw PreconditionError("sic_efficiency_bound: dimension must be at least 2");
    if (score_value < 0.0) throw PreconditionError("sic_efficiency_bound: negative score");
    const double a = alpha(eps);
    const double d = static_cast<double>(dim);
    const double denom = a * d * (d - 1.0);
    const double lead = std::sqrt(2.0) * std::sqrt((d * d - 1.0) * score_value);
    double radicand = lead - a * a * d * (d - 1.0);
    if (radicand < -kDefaultTol.structural) {
        throw InfeasibleError("sic_efficiency_bound: score below the quantum bound");
    }
    // At the quantum-bound endpoint the difference cancels exactly; anything
    // within machine noise of that cancellation is a true zero.
    const double noise_floor = 32.0 * 2.220446049250313e-16 * (lead + a * a * d * (d - 1.0));
    radicand = radicand < noise_floor ? 0.0 : radicand;
    const double eta = (denom - std::sqrt(d - 1.0) * std::sqrt(radicand)) / denom;
    return std::clamp(eta, 0.0, 1.0);
}

int dimension_witness(double score_value, double eps, int n_states, int order) {
    if (score_value < -kDefaultTol.structural) {
        throw PreconditionError("dimension_witness: negative score");
    }
    if (order == 0) {
        // The order-0 bound is the pair count at every dimension, so the
        // witness carries no information; data always sits exactly on it.
        const double pairs = 0.5 * static_cast<double>(n_states) * (n_states - 1);
        if (score_value < pairs - kDefaultTol.structural) {
            throw InfeasibleError("dimension_witness: order-0 score below the pair count");
        }
        return 2;
    }
    const double a2t = ipow(alpha(eps), 2 * order);
    for (int d = 2;; ++d) {
        const double q = std::max(0.0, quantum_bound_any(n_states, d, order));
        if (a2t * q <= score_value + kDefaultTol.structural) return d;
    }
}

} // namespace dcert
