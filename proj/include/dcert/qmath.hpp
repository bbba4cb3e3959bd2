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
 * Self-contained complex linear algebra for small dimensions (d <= 16):
 * vectors, matrices, a cyclic Jacobi eigensolver for Hermitian matrices,
 * fidelity, and Born-rule evaluation. Everything here is a pure function
 * of its inputs; values are immutable once built and safe to share across
 * threads.
 */

#pragma once

#include <complex>
#include <vector>

#include "dcert/errors.hpp"
#include "dcert/tolerances.hpp"

namespace dcert {

using Complex = std::complex<double>;

/// Largest dimension the dense kernels accept.
inline constexpr int kMaxDim = 16;

/// Dense complex vector. When used as a pure state its squared norm must be
/// within the structural tolerance of 1.
class CVec {
  public:
    CVec() = default;
    explicit CVec(int dim);
    explicit CVec(std::vector<Complex> entries);

    int dim() const { return static_cast<int>(entries_.size()); }
    Complex& operator[](int i) { return entries_[static_cast<std::size_t>(i)]; }
    const Complex& operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
    const std::vector<Complex>& entries() const { return entries_; }

  private:
    std::vector<Complex> entries_;
};

/// Dense complex matrix, row-major.
class CMat {
  public:
    CMat() = default;
    explicit CMat(int dim);

    int dim() const { return dim_; }
    Complex& at(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const Complex& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

  private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

struct EigenSystem {
    std::vector<double> values; ///< ascending
    std::vector<CVec> vectors;  ///< orthonormal, vectors[k] pairs with values[k]
};

// -- vectors ----------------------------------------------------------------

/// <u|v>: conjugate-linear in the first argument, linear in the second.
Complex inner(const CVec& u, const CVec& v);

double norm_squared(const CVec& v);
double norm(const CVec& v);
CVec normalized(const CVec& v);

CVec operator+(const CVec& a, const CVec& b);
CVec operator-(const CVec& a, const CVec& b);
CVec operator*(Complex c, const CVec& v);

// -- matrices ---------------------------------------------------------------

CMat identity(int dim);
/// |u><v|
CMat outer(const CVec& u, const CVec& v);
CMat adjoint(const CMat& m);
Complex trace(const CMat& m);

CMat operator+(const CMat& a, const CMat& b);
CMat operator-(const CMat& a, const CMat& b);
CMat operator*(const CMat& a, const CMat& b);
CMat operator*(Complex c, const CMat& m);
CVec operator*(const CMat& m, const CVec& v);

/// max_ij |A[i][j] - conj(A[j][i])| <= tol
bool is_hermitian(const CMat& m, double tol = kDefaultTol.structural);

/// Hermitian, unit trace, and smallest eigenvalue >= -tol.
bool is_density_matrix(const CMat& m, const Tolerances& tol = kDefaultTol);

/// Hermitian with smallest eigenvalue >= -tol (a valid POVM element).
bool is_positive_semidefinite(const CMat& m, const Tolerances& tol = kDefaultTol);

/**
 * Full eigensystem of a Hermitian matrix by cyclic Jacobi rotations.
 *
 * Eigenvalues come back ascending with matching orthonormal eigenvectors.
 * Throws PreconditionError when the input fails the Hermiticity tolerance.
 */
EigenSystem herm_eig(const CMat& m, const Tolerances& tol = kDefaultTol);

/// Positive square root of a PSD matrix (small negative eigenvalues from
/// roundoff are clipped to zero).
CMat psd_sqrt(const CMat& m, const Tolerances& tol = kDefaultTol);

/**
 * Root fidelity F(rho, sigma) = tr sqrt(sqrt(rho) sigma sqrt(rho)).
 *
 * For pure states this reduces to |<phi|psi>|, so the fidelity-based frame
 * potential coincides with the overlap-based one on pure ensembles. Both
 * arguments must be valid density matrices of equal dimension.
 */
double fidelity(const CMat& rho, const CMat& sigma, const Tolerances& tol = kDefaultTol);

/**
 * Born-rule probability Re tr(rho E), clamped to [0, 1] when within the
 * structural tolerance of the boundary. A value farther outside [0, 1]
 * than that is an error, not a clamp.
 */
double born(const CMat& rho, const CMat& effect, const Tolerances& tol = kDefaultTol);

/// x^n for non-negative integer n by repeated multiplication.
double ipow(double x, int n);

} // namespace dcert
