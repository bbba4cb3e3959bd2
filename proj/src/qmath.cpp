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

#include "dcert/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dcert {

namespace {

int checked_dim(int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw PreconditionError("dimension must be between 1 and " + std::to_string(kMaxDim) +
                                ", got " + std::to_string(dim));
    }
    return dim;
}

void require_equal_dims(int a, int b, const char* what) {
    if (a != b) {
        throw PreconditionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
    }
}

double frobenius_norm(const CMat& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) s += std::norm(m.at(i, j));
    return std::sqrt(s);
}

} // namespace

CVec::CVec(int dim) : entries_(static_cast<std::size_t>(checked_dim(dim))) {}

CVec::CVec(std::vector<Complex> entries) : entries_(std::move(entries)) {
    checked_dim(static_cast<int>(entries_.size()));
}

CMat::CMat(int dim)
    : dim_(checked_dim(dim)),
      a_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {}

Complex inner(const CVec& u, const CVec& v) {
    require_equal_dims(u.dim(), v.dim(), "inner");
    Complex s = 0.0;
    for (int i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

double norm_squared(const CVec& v) {
    double s = 0.0;
    for (int i = 0; i < v.dim(); ++i) s += std::norm(v[i]);
    return s;
}

double norm(const CVec& v) { return std::sqrt(norm_squared(v)); }

CVec normalized(const CVec& v) {
    const double n = norm(v);
    if (n == 0.0) throw PreconditionError("normalized: zero vector");
    CVec out(v.dim());
    for (int i = 0; i < v.dim(); ++i) out[i] = v[i] / n;
    return out;
}

CVec operator+(const CVec& a, const CVec& b) {
    require_equal_dims(a.dim(), b.dim(), "vector sum");
    CVec out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
    return out;
}

CVec operator-(const CVec& a, const CVec& b) {
    require_equal_dims(a.dim(), b.dim(), "vector difference");
    CVec out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
    return out;
}

CVec operator*(Complex c, const CVec& v) {
    CVec out(v.dim());
    for (int i = 0; i < v.dim(); ++i) out[i] = c * v[i];
    return out;
}

CMat identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

CMat outer(const CVec& u, const CVec& v) {
    require_equal_dims(u.dim(), v.dim(), "outer");
    CMat m(u.dim());
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < u.dim(); ++j) m.at(i, j) = u[i] * std::conj(v[j]);
    return m;
}

CMat adjoint(const CMat& m) {
    CMat out(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out.at(i, j) = std::conj(m.at(j, i));
    return out;
}

Complex trace(const CMat& m) {
    Complex s = 0.0;
    for (int i = 0; i < m.dim(); ++i) s += m.at(i, i);
    return s;
}

CMat operator+(const CMat& a, const CMat& b) {
    require_equal_dims(a.dim(), b.dim(), "matrix sum");
    CMat out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
    return out;
}

CMat operator-(const CMat& a, const CMat& b) {
    require_equal_dims(a.dim(), b.dim(), "matrix difference");
    CMat out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
    return out;
}

CMat operator*(const CMat& a, const CMat& b) {
    require_equal_dims(a.dim(), b.dim(), "matrix product");
    CMat out(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        for (int k = 0; k < a.dim(); ++k) {
            const Complex aik = a.at(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < a.dim(); ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

CMat operator*(Complex c, const CMat& m) {
    CMat out(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out.at(i, j) = c * m.at(i, j);
    return out;
}

CVec operator*(const CMat& m, const CVec& v) {
    require_equal_dims(m.dim(), v.dim(), "matrix-vector product");
    CVec out(v.dim());
    for (int i = 0; i < m.dim(); ++i) {
        Complex s = 0.0;
        for (int j = 0; j < m.dim(); ++j) s += m.at(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

bool is_hermitian(const CMat& m, double tol) {
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i; j < m.dim(); ++j)
            if (std::abs(m.at(i, j) - std::conj(m.at(j, i))) > tol) return false;
    return true;
}

bool is_positive_semidefinite(const CMat& m, const Tolerances& tol) {
    if (!is_hermitian(m, tol.structural)) return false;
    const EigenSystem es = herm_eig(m, tol);
    return es.values.front() >= -tol.structural;
}

bool is_density_matrix(const CMat& m, const Tolerances& tol) {
    if (!is_hermitian(m, tol.structural)) return false;
    if (std::abs(trace(m) - Complex{1.0, 0.0}) > tol.structural) return false;
    const EigenSystem es = herm_eig(m, tol);
    return es.values.front() >= -tol.structural;
}

EigenSystem herm_eig(const CMat& m, const Tolerances& tol) {
    const int n = m.dim();
    if (n == 0) throw PreconditionError("herm_eig: empty matrix");
    if (!is_hermitian(m, tol.structural)) throw PreconditionError("herm_eig: matrix is not Hermitian");

    // Work on the Hermitized copy so stray antisymmetric roundoff cannot
    // bias the sweep.
    CMat a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
    CMat v = identity(n);

    const double scale = std::max(1.0, frobenius_norm(a));
    const double stop = 1e-15 * scale;
    const double skip = 1e-18 * scale;

    auto off_norm = [&a, n]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += std::norm(a.at(i, j));
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a.at(p, q);
                const double mag = std::abs(apq);
                if (mag <= skip) continue;

                const Complex phase = apq / mag;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (app - aqq) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Right-multiply A and V by the plane rotation, then
                // left-multiply A by its adjoint.
                for (int k = 0; k < n; ++k) {
                    const Complex akp = a.at(k, p);
                    const Complex akq = a.at(k, q);
                    a.at(k, p) = c * akp + s * std::conj(phase) * akq;
                    a.at(k, q) = -s * phase * akp + c * akq;

                    const Complex vkp = v.at(k, p);
                    const Complex vkq = v.at(k, q);
                    v.at(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    v.at(k, q) = -s * phase * vkp + c * vkq;
                }
                for (int k = 0; k < n; ++k) {
                    const Complex apk = a.at(p, k);
                    const Complex aqk = a.at(q, k);
                    a.at(p, k) = c * apk + s * phase * aqk;
                    a.at(q, k) = -s * std::conj(phase) * apk + c * aqk;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    EigenSystem es;
    es.values.reserve(static_cast<std::size_t>(n));
    es.vectors.reserve(static_cast<std::size_t>(n));
    for (int k : order) {
        es.values.push_back(a.at(k, k).real());
        CVec vec(n);
        for (int i = 0; i < n; ++i) vec[i] = v.at(i, k);
        es.vectors.push_back(std::move(vec));
    }
    return es;
}

CMat psd_sqrt(const CMat& m, const Tolerances& tol) {
    const EigenSystem es = herm_eig(m, tol);
    CMat out(m.dim());
    for (int k = 0; k < m.dim(); ++k) {
        const double lam = std::max(0.0, es.values[static_cast<std::size_t>(k)]);
        const double r = std::sqrt(lam);
        if (r == 0.0) continue;
        const CVec& vec = es.vectors[static_cast<std::size_t>(k)];
        for (int i = 0; i < m.dim(); ++i)
            for (int j = 0; j < m.dim(); ++j) out.at(i, j) += r * vec[i] * std::conj(vec[j]);
    }
    return out;
}

double fidelity(const CMat& rho, const CMat& sigma, const Tolerances& tol) {
    require_equal_dims(rho.dim(), sigma.dim(), "fidelity");
    if (!is_density_matrix(rho, tol) || !is_density_matrix(sigma, tol)) {
        throw PreconditionError("fidelity: input is not a valid density matrix");
    }
    const CMat sr = psd_sqrt(rho, tol);
    const EigenSystem es = herm_eig(sr * sigma * sr, tol);
    double f = 0.0;
    for (double lam : es.values) f += std::sqrt(std::max(0.0, lam));
    return std::clamp(f, 0.0, 1.0);
}

double born(const CMat& rho, const CMat& effect, const Tolerances& tol) {
    require_equal_dims(rho.dim(), effect.dim(), "born");
    if (!is_hermitian(rho, tol.structural) || std::abs(trace(rho) - Complex{1.0, 0.0}) > tol.structural) {
        throw PreconditionError("born: first argument is not a unit-trace Hermitian matrix");
    }
    if (!is_hermitian(effect, tol.structural)) {
        throw PreconditionError("born: measurement effect is not Hermitian");
    }
    double p = 0.0;
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j) p += (rho.at(i, j) * effect.at(j, i)).real();
    if (p < -tol.structural || p > 1.0 + tol.structural) {
        throw PreconditionError("born: probability " + std::to_string(p) +
                                " lies outside [0, 1] beyond tolerance");
    }
    return std::clamp(p, 0.0, 1.0);
}

double ipow(double x, int n) {
    if (n < 0) throw PreconditionError("ipow: negative exponent");
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

} // namespace dcert
