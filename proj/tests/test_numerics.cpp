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


#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "support.hpp"
#include "thzris/config.hpp"
#include "thzris/numerics.hpp"
#include "thzris/rng.hpp"

using namespace thzris;
using thzris::testing::random_matrix;

TEST(Svd, IdentityHasUnitSingularValues)
{
    const auto s = svd(ComplexMatrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i)
        EXPECT_NEAR(s.singular_values(i), 1.0, 1e-14);
}

TEST(Svd, DiagonalMatrixGivesSortedValuesAndUnitVectors)
{
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 2.0;
    d(2, 2) = 1.0;
    const auto s = svd(d);
    EXPECT_NEAR(s.singular_values(0), 3.0, 1e-14);
    EXPECT_NEAR(s.singular_values(1), 2.0, 1e-14);
    EXPECT_NEAR(s.singular_values(2), 1.0, 1e-14);
    // pivots are normalized real positive, so U = V = I here
    EXPECT_LT((s.u - ComplexMatrix::Identity(3, 3)).norm(), 1e-12);
    EXPECT_LT((s.v - ComplexMatrix::Identity(3, 3)).norm(), 1e-12);
}

TEST(Svd, ReconstructsRandomMatricesWithOrthonormalFactors)
{
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix m = random_matrix(rng, 4, 6);
        const auto s = svd(m);
        const ComplexMatrix rec = s.u * s.singular_values.cast<cplx>().asDiagonal() * s.v.adjoint();
        EXPECT_LT((rec - m).norm(), 1e-10 * m.norm());
        EXPECT_LT((s.u.adjoint() * s.u - ComplexMatrix::Identity(4, 4)).norm(), 1e-10);
        EXPECT_LT((s.v.adjoint() * s.v - ComplexMatrix::Identity(4, 4)).norm(), 1e-10);
        for (Eigen::Index k = 1; k < s.singular_values.size(); ++k)
            EXPECT_GE(s.singular_values(k - 1), s.singular_values(k));
    }
}

TEST(Svd, DominantEntryOfRightVectorIsRealPositive)
{
    Rng rng(12);
    const auto s = svd(random_matrix(rng, 5, 5));
    for (Eigen::Index k = 0; k < s.v.cols(); ++k) {
        const ComplexVector col = s.v.col(k);
        const cplx pivot = col(dominant_entry(col));
        EXPECT_GT(pivot.real(), 0.0);
        EXPECT_NEAR(pivot.imag(), 0.0, 1e-14);
    }
}

TEST(Svd, RejectsNonFiniteInput)
{
    ComplexMatrix m = ComplexMatrix::Ones(2, 2);
    m(1, 0) = cplx{std::numeric_limits<double>::quiet_NaN(), 0.0};
    EXPECT_THROW(svd(m), InvalidInput);
}

TEST(Kron, ScalarOneLeavesMatrixUnchanged)
{
    Rng rng(13);
    const ComplexMatrix b = random_matrix(rng, 2, 3);
    EXPECT_EQ(kron(ComplexMatrix::Ones(1, 1), b), b);
}

TEST(Kron, IdentitiesGiveIdentity)
{
    EXPECT_EQ(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), ComplexMatrix::Identity(6, 6));
}

TEST(Kron, MatchesFourLoopDefinition)
{
    Rng rng(14);
    const ComplexMatrix a = random_matrix(rng, 2, 2);
    const ComplexMatrix b = random_matrix(rng, 2, 2);
    const ComplexMatrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 4);
    ASSERT_EQ(k.cols(), 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q)
                    EXPECT_EQ(k(2 * i + p, 2 * j + q), a(i, j) * b(p, q));
}

TEST(Kron, MixedProductProperty)
{
    Rng rng(15);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix a = random_matrix(rng, 2, 2), b = random_matrix(rng, 2, 2);
        const ComplexMatrix c = random_matrix(rng, 2, 2), d = random_matrix(rng, 2, 2);
        const ComplexMatrix lhs = kron(a, b) * kron(c, d);
        const ComplexMatrix rhs = kron(a * c, b * d);
        EXPECT_LT((lhs - rhs).norm(), 1e-10 * rhs.norm());
    }
}

TEST(Vec, StacksColumns)
{
    ComplexMatrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const ComplexMatrix v = vec(m);
    ASSERT_EQ(v.rows(), 4);
    EXPECT_EQ(v(0, 0), cplx(1.0));
    EXPECT_EQ(v(1, 0), cplx(3.0));
    EXPECT_EQ(v(2, 0), cplx(2.0));
    EXPECT_EQ(v(3, 0), cplx(4.0));
}

TEST(Vec, ColumnVectorIsFixedPointAndInverseRoundTrips)
{
    Rng rng(16);
    const ComplexMatrix c = random_matrix(rng, 5, 1);
    EXPECT_EQ(vec(c), c);
    const ComplexMatrix m = random_matrix(rng, 3, 4);
    EXPECT_EQ(vec_inverse(vec(m), 3, 4), m);
}

TEST(Vec, InverseRejectsMismatchedDimensions)
{
    const ComplexMatrix v = ComplexMatrix::Ones(6, 1);
    EXPECT_THROW(vec_inverse(v, 4, 2), DimensionError);
    EXPECT_THROW(vec_inverse(ComplexMatrix::Ones(3, 2), 3, 2), DimensionError);
}

TEST(Vec, NormsAgree)
{
    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix m = random_matrix(rng, 3, 5);
        const double fro2 = thzris::testing::frob2_loop(m);
        EXPECT_LT(std::abs(vec(m).squaredNorm() - fro2), 1e-10 * fro2);
        EXPECT_LT(std::abs((m * m.adjoint()).trace().real() - fro2), 1e-10 * fro2);
    }
}

TEST(Vec, KroneckerVecIdentity)
{
    Rng rng(18);
    const ComplexMatrix x = random_matrix(rng, 2, 3), y = random_matrix(rng, 3, 4), z = random_matrix(rng, 4, 2);
    const ComplexMatrix lhs = vec(x * y * z);
    const ComplexMatrix rhs = kron(z.transpose(), x) * vec(y);
    EXPECT_LT((lhs - rhs).norm(), 1e-10 * lhs.norm());
}

TEST(Logdet, IdentityIsZero) { EXPECT_DOUBLE_EQ(hermitian_logdet2(ComplexMatrix::Identity(4, 4)), 0.0); }

TEST(Logdet, DiagonalTwos)
{
    ComplexMatrix m = 2.0 * ComplexMatrix::Identity(2, 2);
    EXPECT_NEAR(hermitian_logdet2(m), 2.0, 1e-14);
}

TEST(Logdet, MatchesDeterminantOfRandomPositiveDefinite)
{
    Rng rng(19);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix a = random_matrix(rng, 3, 3);
        const ComplexMatrix m = a * a.adjoint() + 0.1 * ComplexMatrix::Identity(3, 3);
        // cofactor expansion, independent of any factorization
        const cplx det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        EXPECT_NEAR(hermitian_logdet2(m), std::log2(det.real()), 1e-10);
        EXPECT_NEAR(logdet2_pd(m), std::log2(det.real()), 1e-10);
    }
}

TEST(Logdet, SingularMatrixScoresMinusInfinity)
{
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    EXPECT_EQ(hermitian_logdet2(m), -std::numeric_limits<double>::infinity());
    m(1, 1) = 1e-15;
    EXPECT_EQ(hermitian_logdet2(m), -std::numeric_limits<double>::infinity());
    m(1, 1) = 1e-13;
    EXPECT_TRUE(std::isfinite(hermitian_logdet2(m)));
    EXPECT_EQ(hermitian_logdet2(ComplexMatrix::Zero(3, 3)), -std::numeric_limits<double>::infinity());
}

TEST(Logdet, RejectsNonSquareAndNonHermitian)
{
    EXPECT_THROW(hermitian_logdet2(ComplexMatrix::Ones(2, 3)), InvalidInput);
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = 0.5;
    EXPECT_THROW(hermitian_logdet2(m), InvalidInput);
}

TEST(Angles, WrapIntoHalfOpenRange)
{
    EXPECT_DOUBLE_EQ(wrap_angle(0.0), 0.0);
    EXPECT_NEAR(wrap_angle(-0.5), kTwoPi - 0.5, 1e-15);
    EXPECT_NEAR(wrap_angle(kTwoPi + 1.0), 1.0, 1e-14);
    EXPECT_LT(wrap_angle(kTwoPi), kTwoPi);
    EXPECT_LT(wrap_angle(-1e-18), kTwoPi);
}

TEST(Rng, SameSeedSameStream)
{
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i)
        EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(Rng, DerivedStreamsDiffer)
{
    EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
    EXPECT_NE(derive_seed(1, 1), derive_seed(2, 1));
}

TEST(Rng, UniformMomentsAndComplexNormalVariance)
{
    Rng rng(21);
    const int n = 100000;
    double s = 0.0, s2 = 0.0, below = 0.0;
    double cn = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        s += u;
        s2 += u * u;
        below += static_cast<double>(rng.below(7));
        cn += std::norm(rng.complex_normal());
    }
    EXPECT_NEAR(s / n, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_NEAR(s2 / n - (s / n) * (s / n), 1.0 / 12.0, 0.002);
    EXPECT_NEAR(below / n, 3.0, 3.0 * 2.0 / std::sqrt(n));
    EXPECT_NEAR(cn / n, 1.0, 0.02);
}

TEST(Config, DefaultsValidate)
{
    SystemConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_NEAR(c.g_t, std::pow(10.0, 5.5), 1e-6);
    EXPECT_NEAR(c.wavelength(), 1.875e-4, 1e-12);
    EXPECT_NEAR(c.ris_spacing_wavelengths(), 70e-6 / 1.875e-4, 1e-12);
}

TEST(Config, RejectsBadRfChainCounts)
{
    SystemConfig c;
    c.m_bs = c.n_bs;
    EXPECT_THROW(c.validate(), InvalidInput);
    c = SystemConfig{};
    c.n_s = c.m_ms + 1;
    EXPECT_THROW(c.validate(), InvalidInput);
    c = SystemConfig{};
    c.r0 = 0.0;
    EXPECT_THROW(c.validate(), InvalidInput);
}

TEST(Config, PlanarGridFactorization)
{
    EXPECT_EQ(planar_grid(64).nx, 8);
    EXPECT_EQ(planar_grid(64).ny, 8);
    EXPECT_EQ(planar_grid(32).nx, 4);
    EXPECT_EQ(planar_grid(32).ny, 8);
    EXPECT_EQ(planar_grid(1).nx, 1);
    EXPECT_EQ(planar_grid(24).nx, 4);
    EXPECT_EQ(planar_grid(24).ny, 6);
    EXPECT_EQ(planar_grid(7).nx, 1);
    EXPECT_EQ(planar_grid(7).ny, 7);
    for (int n = 1; n <= 300; ++n) {
        const auto g = planar_grid(n);
        EXPECT_EQ(g.nx * g.ny, n);
        EXPECT_LE(g.nx * g.nx, n);
    }
}
