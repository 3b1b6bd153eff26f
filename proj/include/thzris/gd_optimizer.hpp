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


// Gradient descent on the RIS phases. The objective is the negated cascaded
// channel energy f(phi) = -||H2 Phi H1||_F^2 = mu^2 x^H B x with x = e^{j phi},
// where B is the reduced N_RIS x N_RIS coupling matrix.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "thzris/beamforming.hpp"
#include "thzris/channel.hpp"
#include "thzris/config.hpp"
#include "thzris/error.hpp"
#include "thzris/numerics.hpp"
#include "thzris/ris.hpp"

namespace thzris {

// B(p,q) = -(conj(H1) H1^T)(p,q) * (H2^H H2)(p,q), the samples of
// -(H1^T kron H2)^H (H1^T kron H2) on the diagonal-vec index set.
inline ComplexMatrix build_coupling(const ComplexMatrix &h1, const ComplexMatrix &h2)
{
    require_finite(h1, "build_coupling: H1");
    require_finite(h2, "build_coupling: H2");
    if (h1.rows() != h2.cols())
        throw DimensionError("build_coupling: H1 has " + std::to_string(h1.rows()) + " rows but H2 has " +
                             std::to_string(h2.cols()) + " columns");
    const ComplexMatrix g1 = h1.conjugate() * h1.transpose();
    const ComplexMatrix g2 = h2.adjoint() * h2;
    ComplexMatrix b = -g1.cwiseProduct(g2);
    b = 0.5 * (b + b.adjoint()).eval();
    return b;
}

namespace detail {

inline ComplexVector unit_phasors(std::span<const double> phases)
{
    ComplexVector x(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t i = 0; i < phases.size(); ++i)
        x(static_cast<Eigen::Index>(i)) = std::polar(1.0, phases[i]);
    return x;
}

inline void require_conformable(const ComplexMatrix &b, std::span<const double> phases, const char *what)
{
    if (b.rows() != b.cols() || b.rows() != static_cast<Eigen::Index>(phases.size()))
        throw DimensionError(std::string(what) + ": coupling is " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()) + " but there are " + std::to_string(phases.size()) +
                             " phases");
}

} // namespace detail

inline double objective(const ComplexMatrix &b_eff, std::span<const double> phases, double mu_bar)
{
    detail::require_conformable(b_eff, phases, "objective");
    const ComplexVector x = detail::unit_phasors(phases);
    return mu_bar * mu_bar * x.dot(b_eff * x).real();
}

// df/dphi_n = 2 mu^2 Re(-j conj(x_n) (B x)_n)
inline std::vector<double> gradient(const ComplexMatrix &b_eff, std::span<const double> phases, double mu_bar)
{
    detail::require_conformable(b_eff, phases, "gradient");
    const ComplexVector x = detail::unit_phasors(phases);
    const ComplexVector bx = b_eff * x;
    std::vector<double> g(phases.size());
    const double scale = 2.0 * mu_bar * mu_bar;
    for (std::size_t n = 0; n < phases.size(); ++n) {
        const auto i = static_cast<Eigen::Index>(n);
        g[n] = scale * (cplx{0.0, -1.0} * std::conj(x(i)) * bx(i)).real();
    }
    return g;
}

// f(phi - lambda g) ~ c0 + c1 lambda + c2 lambda^2
struct StepQuadratic {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double operator()(double lambda) const { return c0 + c1 * lambda + c2 * lambda * lambda; }
};

inline StepQuadratic step_quadratic(const ComplexMatrix &b_eff, std::span<const double> phases,
                                    std::span<const double> grad, double mu_bar)
{
    detail::require_conformable(b_eff, phases, "step_quadratic");
    if (grad.size() != phases.size())
        throw DimensionError("step_quadratic: gradient and phases differ in length");
    const double mu2 = mu_bar * mu_bar;
    const Eigen::Index n = b_eff.rows();
    StepQuadratic q;
    double diag = 0.0;
    double im_sum = 0.0;
    double re_sum = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
        diag += b_eff(p, p).real();
        for (Eigen::Index r = p + 1; r < n; ++r) {
            const cplx z = std::polar(1.0, phases[r] - phases[p]) * b_eff(p, r);
            const double d = grad[p] - grad[r];
            q.c0 += 2.0 * mu2 * z.real();
            im_sum += z.imag() * d;
            re_sum += z.real() * d * d;
        }
    }
    q.c0 += mu2 * diag;
    q.c1 = -2.0 * mu2 * im_sum;
    q.c2 = -mu2 * re_sum;
    return q;
}

inline double fallback_step(std::span<const double> grad)
{
    double inf_norm = 0.0;
    for (double g : grad)
        inf_norm = std::max(inf_norm, std::abs(g));
    return 1.0 / (1.0 + inf_norm);
}

inline double adaptive_step(const StepQuadratic &q, std::span<const double> grad)
{
    if (q.c2 > 0.0)
        return -q.c1 / (2.0 * q.c2);
    if (q.c2 < 0.0)
        return std::abs(q.c1) / std::abs(q.c2);
    return fallback_step(grad);
}

inline double adaptive_step(const ComplexMatrix &b_eff, std::span<const double> phases,
                            std::span<const double> grad, double mu_bar)
{
    return adaptive_step(step_quadratic(b_eff, phases, grad, mu_bar), grad);
}

struct GdIterate {
    int iteration = 0;
    double step = 0.0;       // step taken to reach this iterate (0 for the start)
    double objective = 0.0;  // f at this iterate
    double incumbent = 0.0;  // best cascaded energy -f seen so far
};

struct GdResult {
    RisState state;                // quantized incumbent
    double rate = 0.0;             // SVD rate on the quantized cascade
    std::vector<double> incumbent_phases; // continuous incumbent before quantization
    std::vector<GdIterate> history;       // iterations 0..I
    std::vector<double> rate_curve;       // best quantized-incumbent rate after each iteration, when requested
};

struct GdOptions {
    int max_iterations = 100;
    bool record_rates = false;
};

namespace detail {

template <class StepRule>
GdResult gd_loop(const ComplexMatrix &h1, const ComplexMatrix &h2, const SystemConfig &cfg,
                 const RisState &ris_template, const GdOptions &opt, StepRule &&step_rule)
{
    if (opt.max_iterations < 0)
        throw InvalidInput("gradient descent: max_iterations must be >= 0");
    const int n = static_cast<int>(h1.rows());
    const ComplexMatrix b = build_coupling(h1, h2);
    const double mu = ris_template.mu_bar;
    const RisState base = RisState{std::vector<double>(static_cast<std::size_t>(n), 0.0), ris_template.phase_set,
                                   ris_template.mu_bar,  ris_template.bits, ris_template.phi_max, true};

    auto quantized_rate = [&](std::span<const double> phases) {
        const RisState s = base.with_quantized(phases);
        return optimal_rate(cascade(h1, s, h2), cfg);
    };

    GdResult out;
    std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
    double f = objective(b, phi, mu);
    double best_energy = -f;
    out.incumbent_phases = phi;
    out.history.push_back({0, 0.0, f, best_energy});
    double best_rate = 0.0;
    if (opt.record_rates) {
        best_rate = quantized_rate(phi);
        out.rate_curve.push_back(best_rate);
    }

    for (int it = 1; it <= opt.max_iterations; ++it) {
        const std::vector<double> g = gradient(b, phi, mu);
        const double lambda = step_rule(b, phi, g, mu);
        for (std::size_t k = 0; k < phi.size(); ++k)
            phi[k] -= lambda * g[k];
        f = objective(b, phi, mu);
        if (-f > best_energy) {
            best_energy = -f;
            out.incumbent_phases = phi;
        }
        out.history.push_back({it, lambda, f, best_energy});
        if (opt.record_rates) {
            best_rate = std::max(best_rate, quantized_rate(out.incumbent_phases));
            out.rate_curve.push_back(best_rate);
        }
    }

    out.state = base.with_quantized(out.incumbent_phases);
    out.rate = optimal_rate(cascade(h1, out.state, h2), cfg);
    return out;
}

} // namespace detail

inline GdResult a_gd_optimize(const ComplexMatrix &h1, const ComplexMatrix &h2, const SystemConfig &cfg,
                              const RisState &ris_template, const GdOptions &opt = {})
{
    return detail::gd_loop(h1, h2, cfg, ris_template, opt,
                           [](const ComplexMatrix &b, std::span<const double> phi, std::span<const double> g,
                              double mu) { return adaptive_step(b, phi, g, mu); });
}

inline GdResult c_gd_optimize(const ComplexMatrix &h1, const ComplexMatrix &h2, const SystemConfig &cfg,
                              const RisState &ris_template, double fixed_step, const GdOptions &opt = {})
{
    if (!(fixed_step >= 0.0) || !std::isfinite(fixed_step))
        throw InvalidInput("c_gd_optimize: fixed step must be finite and non-negative");
    return detail::gd_loop(
        h1, h2, cfg, ris_template, opt,
        [fixed_step](const ComplexMatrix &, std::span<const double>, std::span<const double>, double) {
            return fixed_step;
        });
}

// Best single step from phi = 0 among 10^-k / ||grad||_inf, k = 1..6.
inline double calibrate_fixed_step(const ComplexMatrix &h1, const ComplexMatrix &h2, double mu_bar)
{
    const ComplexMatrix b = build_coupling(h1, h2);
    const std::vector<double> phi0(static_cast<std::size_t>(b.rows()), 0.0);
    const std::vector<double> g = gradient(b, phi0, mu_bar);
    double inf_norm = 0.0;
    for (double v : g)
        inf_norm = std::max(inf_norm, std::abs(v));
    if (!(inf_norm > 0.0))
        return 0.1;
    double best_step = 0.0;
    double best_f = std::numeric_limits<double>::infinity();
    std::vector<double> trial(phi0.size());
    double scale = 1.0;
    for (int k = 1; k <= 6; ++k) {
        scale *= 0.1;
        const double lambda = scale / inf_norm;
        for (std::size_t i = 0; i < trial.size(); ++i)
            trial[i] = -lambda * g[i];
        const double f = objective(b, trial, mu_bar);
        if (f < best_f) {
            best_f = f;
            best_step = lambda;
        }
    }
    return best_step;
}

inline void write_gd_trace_csv(std::ostream &os, std::span<const GdIterate> history)
{
    os << "iteration,step,objective,incumbent\n";
    char buf[128];
    for (const auto &h : history) {
        std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%.9g\n", h.iteration, h.step, h.objective, h.incumbent);
        os << buf;
    }
}

} // namespace thzris
