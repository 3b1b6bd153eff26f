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


// Alternating optimization: column-by-column (CBC) hybrid factorization of the
// SVD beamformers, then a one-vs-rest discrete search over the RIS phases that
// maximizes R~ = log2|(rho / delta^2 N_s) Hbar_e Hbar_e^H|, Hbar_e = W^H H_e F.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
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

struct SplitVectors {
    ComplexVector p;
    ComplexVector q;
};

// col = d_max (p + q) with |p_i| = |q_i| = 1.
inline SplitVectors constant_magnitude_split(const ComplexVector &col, double d_max)
{
    if (!(d_max > 0.0) || !std::isfinite(d_max))
        throw InvalidInput("constant_magnitude_split: d_max must be positive and finite");
    SplitVectors out{ComplexVector(col.size()), ComplexVector(col.size())};
    for (Eigen::Index i = 0; i < col.size(); ++i) {
        const double mag = std::abs(col(i));
        const double ratio = mag / (2.0 * d_max);
        if (ratio > 1.0 + 1e-12)
            throw InfeasibleSplit("constant_magnitude_split: |col_" + std::to_string(i) + "| exceeds 2 d_max");
        const double theta = std::acos(std::min(ratio, 1.0));
        const double angle = std::arg(col(i));
        out.p(i) = std::polar(1.0, angle + theta);
        out.q(i) = std::polar(1.0, angle - theta);
    }
    return out;
}

struct CbcPlan {
    std::vector<int> exact_columns;
    std::vector<int> approx_columns;
    std::vector<double> d_max;
    std::vector<double> variances;
};

struct CbcResult {
    ComplexMatrix rf; // N x M, unit modulus
    ComplexMatrix bb; // M x N_s
    CbcPlan plan;
};

// sum_q (|f_q| - ||f||_1 / N)^2
inline double amplitude_variance(const ComplexVector &col)
{
    const RealVector mag = col.cwiseAbs();
    const double mean = mag.sum() / static_cast<double>(mag.size());
    return (mag.array() - mean).square().sum();
}

// Factorization with an explicit set of approximated columns. Every other
// column uses the exact two-vector split.
inline CbcResult cbc_factor_with_selection(const ComplexMatrix &f_opt, int m_chains, std::vector<int> approx,
                                           bool normalize)
{
    require_finite(f_opt, "cbc_factor");
    const auto n = f_opt.rows();
    const int n_s = static_cast<int>(f_opt.cols());
    std::sort(approx.begin(), approx.end());
    approx.erase(std::unique(approx.begin(), approx.end()), approx.end());
    for (int l : approx)
        if (l < 0 || l >= n_s)
            throw InvalidInput("cbc_factor: approximated column index out of range");
    const int n_approx = static_cast<int>(approx.size());
    if (2 * n_s - n_approx > m_chains)
        throw InvalidInput("cbc_factor: " + std::to_string(m_chains) + " RF chains cannot hold " +
                           std::to_string(n_s - n_approx) + " exact columns and " + std::to_string(n_approx) +
                           " approximate ones");

    CbcResult out;
    out.rf = ComplexMatrix::Ones(n, m_chains);
    out.bb = ComplexMatrix::Zero(m_chains, n_s);
    for (int l = 0; l < n_s; ++l) {
        const ComplexVector col = f_opt.col(l);
        out.plan.d_max.push_back(col.cwiseAbs().maxCoeff());
        out.plan.variances.push_back(amplitude_variance(col));
    }

    Eigen::Index next = 0;
    for (int l = 0; l < n_s; ++l) {
        const ComplexVector col = f_opt.col(l);
        const double d_max = out.plan.d_max[static_cast<std::size_t>(l)];
        if (std::binary_search(approx.begin(), approx.end(), l)) {
            out.plan.approx_columns.push_back(l);
            for (Eigen::Index i = 0; i < n; ++i)
                out.rf(i, next) = std::polar(1.0, std::arg(col(i)));
            out.bb(next, l) = col.cwiseAbs().sum() / static_cast<double>(n);
            ++next;
        } else {
            out.plan.exact_columns.push_back(l);
            if (d_max > 0.0) {
                const SplitVectors s = constant_magnitude_split(col, d_max);
                out.rf.col(next) = s.p;
                out.rf.col(next + 1) = s.q;
                out.bb(next, l) = d_max;
                out.bb(next + 1, l) = d_max;
            }
            next += 2;
        }
    }

    if (normalize) {
        const double norm = (out.rf * out.bb).norm();
        if (norm > 0.0)
            out.bb *= std::sqrt(static_cast<double>(n_s)) / norm;
    }
    return out;
}

// Columns are approximated only when M < 2 N_s, and then exactly the
// (2 N_s - M) with the smallest amplitude variance (lower index on ties).
inline CbcResult cbc_factor(const ComplexMatrix &f_opt, int m_chains, bool normalize)
{
    const int n_s = static_cast<int>(f_opt.cols());
    if (n_s < 1 || m_chains < n_s)
        throw InvalidInput("cbc_factor: need m_chains >= N_s >= 1");
    if (f_opt.rows() < 1)
        throw InvalidInput("cbc_factor: empty beamformer");
    std::vector<int> approx;
    const int n_approx = std::max(0, 2 * n_s - m_chains);
    if (n_approx > 0) {
        std::vector<double> var(static_cast<std::size_t>(n_s));
        for (int l = 0; l < n_s; ++l)
            var[static_cast<std::size_t>(l)] = amplitude_variance(f_opt.col(l));
        std::vector<int> order(static_cast<std::size_t>(n_s));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return var[static_cast<std::size_t>(a)] < var[static_cast<std::size_t>(b)];
        });
        approx.assign(order.begin(), order.begin() + n_approx);
    }
    return cbc_factor_with_selection(f_opt, m_chains, std::move(approx), normalize);
}

inline HybridBeamformers hybrid_beamformers(const ComplexMatrix &h_e, const SystemConfig &cfg)
{
    const DigitalBeamformers dig = optimal_digital_beamformers(h_e, cfg.n_s);
    const CbcResult tx = cbc_factor(dig.f_opt, cfg.m_bs, true);
    const CbcResult rx = cbc_factor(dig.w_opt, cfg.m_ms, false);
    return {tx.rf, tx.bb, rx.rf, rx.bb, dig.f_opt, dig.w_opt};
}

struct PqTerms {
    ComplexMatrix p; // N_s x N_s, Hermitian PSD
    ComplexMatrix q; // N_s x N_s
};

// Hbar_e Hbar_e^H = P_n + phi_n Q_n + conj(phi_n) Q_n^H with phi_n = mu e^{j theta_n}.
// h1_bar = H1 F (N_RIS x N_s), h2_bar = W^H H2 (N_s x N_RIS).
inline PqTerms compute_pq(int n, const ComplexMatrix &h1_bar, const ComplexMatrix &h2_bar,
                          std::span<const double> phases, double mu_bar)
{
    const auto n_ris = static_cast<Eigen::Index>(phases.size());
    if (h1_bar.rows() != n_ris || h2_bar.cols() != n_ris || h1_bar.cols() != h2_bar.rows())
        throw DimensionError("compute_pq: reduced channels do not match the phase vector");
    if (n < 0 || n >= n_ris)
        throw InvalidInput("compute_pq: element index out of range");
    const auto n_s = h2_bar.rows();
    ComplexMatrix rest = ComplexMatrix::Zero(n_s, n_s);
    for (Eigen::Index i = 0; i < n_ris; ++i)
        if (i != n)
            rest += std::polar(mu_bar, phases[static_cast<std::size_t>(i)]) * (h2_bar.col(i) * h1_bar.row(i));
    const ComplexMatrix a = h2_bar.col(n) * h1_bar.row(n);
    return {mu_bar * mu_bar * a * a.adjoint() + rest * rest.adjoint(), a * rest.adjoint()};
}

struct AoTraceRow {
    int outer_iter = 0;
    int element_index = 0;
    double chosen_phase = 0.0; // rad
    double r_tilde = 0.0;
};

struct LinearSearchResult {
    RisState state;
    std::vector<double> r_tilde; // after each element update
    std::vector<AoTraceRow> trace;
};

inline double r_tilde_score(const ComplexMatrix &gram, const SystemConfig &cfg)
{
    const double c = cfg.rho / (cfg.delta_sq * static_cast<double>(cfg.n_s));
    return hermitian_logdet2(c * gram);
}

// One sweep over the elements in ascending order.
inline LinearSearchResult linear_search_phases(const ComplexMatrix &h1, const ComplexMatrix &h2,
                                               const ComplexMatrix &f, const ComplexMatrix &w,
                                               const SystemConfig &cfg, const RisState &ris, int outer_iter = 0)
{
    const auto n_ris = static_cast<Eigen::Index>(ris.phases.size());
    if (h1.rows() != n_ris || h2.cols() != n_ris)
        throw DimensionError("linear_search_phases: channels do not match the RIS size");
    if (f.rows() != h1.cols() || w.rows() != h2.rows() || f.cols() != w.cols())
        throw DimensionError("linear_search_phases: beamformers do not match the channels");
    if (ris.phase_set.empty())
        throw InvalidInput("linear_search_phases: empty phase set");

    const ComplexMatrix h1_bar = h1 * f;
    const ComplexMatrix h2_bar = w.adjoint() * h2;
    const double mu = ris.mu_bar;

    LinearSearchResult out;
    out.state = ris;
    std::vector<double> &phi = out.state.phases;

    for (Eigen::Index n = 0; n < n_ris; ++n) {
        const PqTerms pq = compute_pq(static_cast<int>(n), h1_bar, h2_bar, phi, mu);
        auto score = [&](double theta) {
            const cplx c = std::polar(mu, theta);
            const ComplexMatrix g = pq.p + c * pq.q + std::conj(c) * pq.q.adjoint();
            return r_tilde_score(0.5 * (g + g.adjoint()), cfg);
        };
        double best_theta = phi[static_cast<std::size_t>(n)];
        double best = score(best_theta);
        bool any_finite = std::isfinite(best);
        for (double theta : ris.phase_set) {
            const double s = score(theta);
            any_finite = any_finite || std::isfinite(s);
            if (s > best) {
                best = s;
                best_theta = theta;
            }
        }
        if (!any_finite)
            throw DegenerateChannel("linear_search_phases: every candidate for element " + std::to_string(n) +
                                    " gives a singular determinant");
        phi[static_cast<std::size_t>(n)] = best_theta;
        out.r_tilde.push_back(best);
        out.trace.push_back({outer_iter, static_cast<int>(n), best_theta, best});
    }
    out.state.quantized = ris.quantized;
    return out;
}

struct AoOptions {
    int max_outer = 10;
    double tol = 1e-3;
};

struct AoResult {
    HybridBeamformers beamformers;
    RisState state;
    double rate = 0.0;
    std::vector<double> history; // hybrid rate of the initial cascade, then after each outer iteration
    std::vector<AoTraceRow> trace;
    int outer_iterations = 0;
    bool converged = false;      // stopped on the tolerance rather than the iteration cap
};

inline AoResult ao_optimize(const ComplexMatrix &h1, const ComplexMatrix &h2, const SystemConfig &cfg,
                            const RisState &ris_template, const AoOptions &opt = {})
{
    if (opt.max_outer < 0 || !(opt.tol >= 0.0))
        throw InvalidInput("ao_optimize: need max_outer >= 0 and tol >= 0");
    AoResult out;
    out.state = RisState{std::vector<double>(static_cast<std::size_t>(h1.rows()), 0.0), ris_template.phase_set,
                         ris_template.mu_bar, ris_template.bits, ris_template.phi_max, true};
    ComplexMatrix h_e = cascade(h1, out.state, h2);
    out.beamformers = hybrid_beamformers(h_e, cfg);
    out.rate = achievable_rate(h_e, out.beamformers, cfg);
    out.history.push_back(out.rate);

    for (int it = 1; it <= opt.max_outer; ++it) {
        LinearSearchResult ls = linear_search_phases(h1, h2, out.beamformers.precoder(),
                                                     out.beamformers.combiner(), cfg, out.state, it);
        out.state = std::move(ls.state);
        out.trace.insert(out.trace.end(), ls.trace.begin(), ls.trace.end());
        h_e = cascade(h1, out.state, h2);
        out.beamformers = hybrid_beamformers(h_e, cfg);
        const double prev = out.rate;
        out.rate = achievable_rate(h_e, out.beamformers, cfg);
        out.history.push_back(out.rate);
        out.outer_iterations = it;
        if (std::abs(out.rate - prev) < opt.tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

inline void write_ao_trace_csv(std::ostream &os, std::span<const AoTraceRow> rows)
{
    os << "outer_iter,element_index,chosen_phase_deg,r_tilde\n";
    char buf[128];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.9g,%.9g\n", r.outer_iter, r.element_index, rad2deg(r.chosen_phase),
                      r.r_tilde);
        os << buf;
    }
}

} // namespace thzris
