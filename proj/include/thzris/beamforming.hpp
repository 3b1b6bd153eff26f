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


// Fully-digital SVD beamformers, the achievable rate of a precoder/combiner
// pair over a cascaded channel, and the trace upper bound on that rate.

#pragma once

#include <cmath>
#include <string>

#include "thzris/config.hpp"
#include "thzris/error.hpp"
#include "thzris/numerics.hpp"

namespace thzris {

struct DigitalBeamformers {
    ComplexMatrix f_opt; // N_BS x N_s, first right singular vectors
    ComplexMatrix w_opt; // N_MS x N_s, first left singular vectors
};

struct HybridBeamformers {
    ComplexMatrix f_rf; // N_BS x M_BS, unit modulus
    ComplexMatrix f_bb; // M_BS x N_s
    ComplexMatrix w_rf; // N_MS x M_MS, unit modulus
    ComplexMatrix w_bb; // M_MS x N_s
    ComplexMatrix f_opt;
    ComplexMatrix w_opt;

    ComplexMatrix precoder() const { return f_rf * f_bb; }
    ComplexMatrix combiner() const { return w_rf * w_bb; }
};

inline DigitalBeamformers optimal_digital_beamformers(const ComplexMatrix &h_e, int n_s)
{
    require_finite(h_e, "optimal_digital_beamformers");
    if (n_s < 1 || n_s > std::min(h_e.rows(), h_e.cols()))
        throw InvalidInput("optimal_digital_beamformers: n_s = " + std::to_string(n_s) +
                           " exceeds the smaller channel dimension");
    const SvdResult s = svd(h_e);
    return {s.v.leftCols(n_s), s.u.leftCols(n_s)};
}

// Smallest eigenvalue of W^H W relative to the largest below which the
// combiner is rejected.
inline constexpr double kCombinerConditionFloor = 1e-12;

// log2 |I + c (W^H W)^{-1} W^H H F F^H H^H W| with c = rho / (delta^2 N_s),
// evaluated as log2|W^H W + c G G^H| - log2|W^H W|, G = W^H H F.
inline double achievable_rate(const ComplexMatrix &h_e, const ComplexMatrix &f, const ComplexMatrix &w,
                              const SystemConfig &cfg)
{
    require_finite(h_e, "achievable_rate: H_e");
    require_finite(f, "achievable_rate: F");
    require_finite(w, "achievable_rate: W");
    if (f.rows() != h_e.cols() || w.rows() != h_e.rows() || f.cols() != w.cols())
        throw DimensionError("achievable_rate: H_e is " + std::to_string(h_e.rows()) + "x" +
                             std::to_string(h_e.cols()) + ", F is " + std::to_string(f.rows()) + "x" +
                             std::to_string(f.cols()) + ", W is " + std::to_string(w.rows()) + "x" +
                             std::to_string(w.cols()));
    if (!(cfg.rho >= 0.0) || !(cfg.delta_sq > 0.0) || cfg.n_s < 1)
        throw InvalidInput("achievable_rate: need rho >= 0, delta_sq > 0, n_s >= 1");

    const ComplexMatrix gram = w.adjoint() * w;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (gram + gram.adjoint()), Eigen::EigenvaluesOnly);
    const RealVector &lambda = eig.eigenvalues();
    const double top = lambda(lambda.size() - 1);
    if (!(top > 0.0) || lambda(0) <= kCombinerConditionFloor * top)
        throw IllConditionedCombiner("achievable_rate: W^H W is singular");

    const double c = cfg.rho / (cfg.delta_sq * static_cast<double>(cfg.n_s));
    const ComplexMatrix g = w.adjoint() * h_e * f;
    const double r = logdet2_pd(gram + c * g * g.adjoint()) - logdet2_pd(gram);
    return std::max(r, 0.0);
}

inline double achievable_rate(const ComplexMatrix &h_e, const DigitalBeamformers &bf, const SystemConfig &cfg)
{
    return achievable_rate(h_e, bf.f_opt, bf.w_opt, cfg);
}

inline double achievable_rate(const ComplexMatrix &h_e, const HybridBeamformers &bf, const SystemConfig &cfg)
{
    return achievable_rate(h_e, bf.precoder(), bf.combiner(), cfg);
}

// Rate of the SVD beamformers on h_e.
inline double optimal_rate(const ComplexMatrix &h_e, const SystemConfig &cfg)
{
    return achievable_rate(h_e, optimal_digital_beamformers(h_e, cfg.n_s), cfg);
}

inline double jensen_upper_bound(const ComplexMatrix &h_e, const SystemConfig &cfg)
{
    require_finite(h_e, "jensen_upper_bound");
    const double ns = static_cast<double>(cfg.n_s);
    const double energy = h_e.squaredNorm();
    return ns * std::log2(1.0 + cfg.rho / (cfg.delta_sq * ns) * energy);
}

} // namespace thzris
