// SPDX-License-Identifier: Apache-2.0
//
// thzris: simulation and optimization toolkit for RIS-assisted THz MIMO links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Dense complex linear algebra used by every other module. Matrices are plain
// Eigen dynamic matrices; this header adds the handful of operations the rest
// of the library needs with the conventions it relies on (column-major vec,
// phase-normalized singular vectors, -inf sentinel for singular log-dets).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "thzris/error.hpp"

namespace thzris {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Eigenvalues at or below this fraction of the largest one make a Hermitian
// matrix count as singular in hermitian_logdet2.
inline constexpr double kLogdetPositivityFloor = 1e-14;
inline constexpr double kHermitianTolerance = 1e-8;

inline bool all_finite(const ComplexMatrix &m)
{
    for (Eigen::Index k = 0; k < m.size(); ++k)
        if (!std::isfinite(m.data()[k].real()) || !std::isfinite(m.data()[k].imag()))
            return false;
    return true;
}

inline void require_finite(const ComplexMatrix &m, const char *what)
{
    if (m.size() == 0)
        throw InvalidInput(std::string(what) + ": empty matrix");
    if (!all_finite(m))
        throw InvalidInput(std::string(what) + ": non-finite entry");
}

inline void require_shape(const ComplexMatrix &m, Eigen::Index rows, Eigen::Index cols, const char *what)
{
    if (m.rows() != rows || m.cols() != cols)
        throw DimensionError(std::string(what) + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                             ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

struct SvdResult {
    ComplexMatrix u;          // rows(m) x k, orthonormal columns
    RealVector singular_values; // k = min(rows, cols), descending
    ComplexMatrix v;          // cols(m) x k, orthonormal columns
};

// Index of the first entry whose magnitude is within a relative 1e-9 of the
// column maximum. The slack keeps the choice stable for constant-modulus
// vectors, where every entry ties up to rounding.
inline Eigen::Index dominant_entry(const ComplexVector &col)
{
    const double peak = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < col.size(); ++i)
        if (std::abs(col(i)) >= peak * (1.0 - 1e-9))
            return i;
    return 0;
}

// Thin SVD m = U diag(s) V^H. Each pair (u_k, v_k) is rotated by a common unit
// phase so that the dominant entry of v_k is real and positive; this removes
// the per-column phase freedom and makes results reproducible.
inline SvdResult svd(const ComplexMatrix &m)
{
    require_finite(m, "svd");
    Eigen::BDCSVD<ComplexMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
    for (Eigen::Index k = 0; k < out.v.cols(); ++k) {
        const ComplexVector col = out.v.col(k);
        const cplx pivot = col(dominant_entry(col));
        if (std::abs(pivot) == 0.0)
            continue;
        const cplx rot = std::conj(pivot) / std::abs(pivot);
        out.v.col(k) *= rot;
        out.u.col(k) *= rot;
    }
    return out;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b)
{
    require_finite(a, "kron");
    require_finite(b, "kron");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Column-ordered stacking: vec(M)[i + j*rows] = M(i, j).
inline ComplexMatrix vec(const ComplexMatrix &m)
{
    require_finite(m, "vec");
    return m.reshaped(m.size(), 1);
}

inline ComplexMatrix vec_inverse(const ComplexMatrix &v, Eigen::Index rows, Eigen::Index cols)
{
    if (v.cols() != 1 || rows < 1 || cols < 1 || v.rows() != rows * cols)
        throw DimensionError("vec_inverse: a " + std::to_string(v.rows()) + "x" + std::to_string(v.cols()) +
                             " vector cannot be reshaped to " + std::to_string(rows) + "x" + std::to_string(cols));
    return v.reshaped(rows, cols);
}

inline bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTolerance)
{
    if (m.rows() != m.cols())
        return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

// log2 det(m) for a Hermitian positive definite m. Returns -infinity when the
// smallest eigenvalue is at or below kLogdetPositivityFloor times the largest
// (or the largest is not positive).
inline double hermitian_logdet2(const ComplexMatrix &m)
{
    if (m.rows() != m.cols())
        throw InvalidInput("hermitian_logdet2: matrix is not square");
    require_finite(m, "hermitian_logdet2");
    if (!is_hermitian(m))
        throw InvalidInput("hermitian_logdet2: matrix is not Hermitian");

    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sym, Eigen::EigenvaluesOnly);
    const RealVector &lambda = eig.eigenvalues(); // ascending
    const double top = lambda(lambda.size() - 1);
    if (!(top > 0.0) || lambda(0) <= kLogdetPositivityFloor * top)
        return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        acc += std::log2(lambda(i));
    return acc;
}

// log2 det of a Hermitian matrix that is positive definite by construction
// (identity plus a Gram term); Cholesky based.
inline double logdet2_pd(const ComplexMatrix &m)
{
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::LLT<ComplexMatrix> llt(sym);
    if (llt.info() != Eigen::Success)
        throw NumericalError("logdet2_pd: matrix is not positive definite");
    const auto diag = llt.matrixLLT().diagonal();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i)
        acc += 2.0 * std::log2(diag(i).real());
    return acc;
}

// Reduces an angle into [0, 2pi).
inline double wrap_angle(double a)
{
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    if (r >= kTwoPi)
        r = 0.0;
    return r;
}

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

} // namespace thzris
