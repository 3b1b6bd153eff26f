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

#include "support.hpp"
#include "thzris/beamforming.hpp"

using namespace thzris;
using thzris::testing::random_matrix;

namespace {

SystemConfig small_config(int n_s, double rho = 10.0)
{
    SystemConfig c;
    c.n_s = n_s;
    c.rho = rho;
    c.delta_sq = 1.0;
    return c;
}

// sum_k log2(1 + c sigma_k^2) over the first n_s singular values
double svd_rate_oracle(const ComplexMatrix &h, const SystemConfig &cfg)
{
    Eigen::JacobiSVD<ComplexMatrix> s(h);
    const double c = cfg.rho / (cfg.delta_sq * cfg.n_s);
    double r = 0.0;
    for (int k = 0; k < cfg.n_s; ++k)
        r += std::log2(1.0 + c * s.singularValues()(k) * s.singularValues()(k));
    return r;
}

} // namespace

TEST(OptimalBeamformers, DiagonalChannelGivesLeadingUnitVectors)
{
    ComplexMatrix h = ComplexMatrix::Zero(3, 3);
    h(0, 0) = 3.0;
    h(1, 1) = 2.0;
    h(2, 2) = 1.0;
    const auto bf = optimal_digital_beamformers(h, 2);
    EXPECT_LT((bf.f_opt - ComplexMatrix::Identity(3, 2)).norm(), 1e-12);
    EXPECT_LT((bf.w_opt - ComplexMatrix::Identity(3, 2)).norm(), 1e-12);
}

TEST(OptimalBeamformers, ColumnsAreOrthonormal)
{
    Rng rng(51);
    const ComplexMatrix h = random_matrix(rng, 6, 9);
    const auto bf = optimal_digital_beamformers(h, 3);
    EXPECT_NEAR(bf.f_opt.squaredNorm(), 3.0, 1e-12);
    EXPECT_LT((bf.w_opt.adjoint() * bf.w_opt - ComplexMatrix::Identity(3, 3)).norm(), 1e-12);
}

TEST(OptimalBeamformers, RejectsTooManyStreams)
{
    EXPECT_THROW(optimal_digital_beamformers(ComplexMatrix::Ones(2, 5), 3), InvalidInput);
    EXPECT_THROW(optimal_digital_beamformers(ComplexMatrix::Ones(2, 5), 0), InvalidInput);
}

TEST(Rate, SvdBeamformersMatchSingularValueFormula)
{
    Rng rng(52);
    for (int t = 0; t < 50; ++t) {
        const SystemConfig cfg = small_config(1 + t % 4, rng.uniform(0.1, 100.0));
        const ComplexMatrix h = random_matrix(rng, 6, 8);
        const double r = achievable_rate(h, optimal_digital_beamformers(h, cfg.n_s), cfg);
        EXPECT_NEAR(r, svd_rate_oracle(h, cfg), 1e-8);
    }
}

TEST(Rate, RankOneSingleStream)
{
    Rng rng(53);
    const ComplexMatrix u = random_matrix(rng, 5, 1), v = random_matrix(rng, 7, 1);
    const ComplexMatrix h = u * v.adjoint();
    const SystemConfig cfg = small_config(1, 3.0);
    const double sigma = u.norm() * v.norm();
    EXPECT_NEAR(optimal_rate(h, cfg), std::log2(1.0 + 3.0 * sigma * sigma), 1e-10);
}

TEST(Rate, ZeroPrecoderGivesZero)
{
    Rng rng(54);
    const ComplexMatrix h = random_matrix(rng, 4, 4);
    const SystemConfig cfg = small_config(2);
    EXPECT_DOUBLE_EQ(achievable_rate(h, ComplexMatrix::Zero(4, 2), random_matrix(rng, 4, 2), cfg), 0.0);
}

TEST(Rate, MonotoneInPowerAndVanishingAtZero)
{
    Rng rng(55);
    const ComplexMatrix h = random_matrix(rng, 4, 6);
    const ComplexMatrix f = random_matrix(rng, 6, 2), w = random_matrix(rng, 4, 2);
    double prev = -1.0;
    for (double rho : {1e-12, 1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3}) {
        const double r = achievable_rate(h, f, w, small_config(2, rho));
        EXPECT_GE(r, prev);
        prev = r;
    }
    EXPECT_LT(achievable_rate(h, f, w, small_config(2, 1e-12)), 1e-9);
}

TEST(Rate, InvariantToInvertibleCombinerMixing)
{
    Rng rng(56);
    for (int t = 0; t < 30; ++t) {
        const SystemConfig cfg = small_config(3);
        const ComplexMatrix h = random_matrix(rng, 6, 6);
        const ComplexMatrix f = random_matrix(rng, 6, 3), w = random_matrix(rng, 6, 3);
        const ComplexMatrix mix = random_matrix(rng, 3, 3) + 2.0 * ComplexMatrix::Identity(3, 3);
        EXPECT_NEAR(achievable_rate(h, f, w, cfg), achievable_rate(h, f, w * mix, cfg), 1e-8);
    }
}

TEST(Rate, HybridFactorsNeverBeatSvdBeamformers)
{
    Rng rng(57);
    for (int t = 0; t < 100; ++t) {
        const SystemConfig cfg = small_config(2);
        const ComplexMatrix h = random_matrix(rng, 5, 7);
        // any unit-norm-per-stream precoder with ||F||_F^2 = N_s
        ComplexMatrix f = random_matrix(rng, 7, 2);
        f *= std::sqrt(2.0) / f.norm();
        const ComplexMatrix w = random_matrix(rng, 5, 2);
        EXPECT_LE(achievable_rate(h, f, w, cfg), optimal_rate(h, cfg) + 1e-8);
    }
}

TEST(Rate, SingularCombinerIsRejected)
{
    const ComplexMatrix h = ComplexMatrix::Identity(3, 3);
    ComplexMatrix w = ComplexMatrix::Zero(3, 2);
    w(0, 0) = 1.0;
    w(0, 1) = 1.0;
    EXPECT_THROW(achievable_rate(h, ComplexMatrix::Identity(3, 2), w, small_config(2)), IllConditionedCombiner);
    EXPECT_THROW(achievable_rate(h, ComplexMatrix::Identity(3, 2), ComplexMatrix::Identity(3, 3), small_config(2)),
                 DimensionError);
}

TEST(Jensen, ZeroChannel)
{
    EXPECT_DOUBLE_EQ(jensen_upper_bound(ComplexMatrix::Zero(3, 4), small_config(2)), 0.0);
}

TEST(Jensen, BoundsOptimalRateOnRandomInstances)
{
    Rng rng(58);
    for (int t = 0; t < 200; ++t) {
        const SystemConfig cfg = small_config(1 + t % 3, rng.uniform(0.01, 1000.0));
        const ComplexMatrix h = random_matrix(rng, 4, 5);
        EXPECT_LE(optimal_rate(h, cfg), jensen_upper_bound(h, cfg) + 1e-12);
    }
}

TEST(Jensen, TraceStepIsTightWhenStreamsMatchRank)
{
    Rng rng(59);
    // rank-2 channel with equal singular values
    const ComplexMatrix q1 = Eigen::HouseholderQR<ComplexMatrix>(random_matrix(rng, 5, 5)).householderQ();
    const ComplexMatrix q2 = Eigen::HouseholderQR<ComplexMatrix>(random_matrix(rng, 6, 6)).householderQ();
    const double sigma = 1.7;
    const ComplexMatrix h = sigma * q1.leftCols(2) * q2.leftCols(2).adjoint();
    const SystemConfig cfg = small_config(2, 4.0);
    const double c = 4.0 / 2.0;
    // with N_s = rank the trace over the kept singular values equals tr(H H^H)
    EXPECT_NEAR(jensen_upper_bound(h, cfg), 2.0 * std::log2(1.0 + c * 2.0 * sigma * sigma), 1e-10);
    EXPECT_NEAR(jensen_upper_bound(h, cfg) - optimal_rate(h, cfg),
                2.0 * (std::log2(1.0 + c * 2.0 * sigma * sigma) - std::log2(1.0 + c * sigma * sigma)), 1e-10);
    // with one stream the trace still counts both singular values, so the bound is strict
    const SystemConfig one = small_config(1, 4.0);
    EXPECT_GT(jensen_upper_bound(h, one) - optimal_rate(h, one), 0.5);
}
