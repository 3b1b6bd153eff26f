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

// RIS reflection state (discrete phase sets, quantization, the diagonal
// reflection matrix) and the closed-form graphene element physics.

#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <span>
#include <vector>

#include "thzris/error.hpp"
#include "thzris/numerics.hpp"

namespace thzris {

// ---------------------------------------------------------------------------
// Discrete phase configuration
// ---------------------------------------------------------------------------

struct RisParams {
    double phi_max = deg2rad(306.82); // maximum phase response, rad
    int bits = 3;
    double mu_bar = 0.8;              // averaged reflecting amplitude
};

// {k * phi_max / 2^b : k = 0 .. 2^b - 1}
inline std::vector<double> build_phase_set(double phi_max, int bits)
{
    if (bits < 1)
        throw InvalidInput("build_phase_set: need at least one quantization bit");
    if (bits > 16)
        throw InvalidInput("build_phase_set: more than 16 bits is not supported");
    if (!(phi_max > 0.0) || phi_max > kTwoPi * (1.0 + 1e-12))
        throw InvalidInput("build_phase_set: phi_max must lie in (0, 2pi]");
    const int levels = 1 << bits;
    std::vector<double> set(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k)
        set[static_cast<std::size_t>(k)] = static_cast<double>(k) * phi_max / static_cast<double>(levels);
    return set;
}

inline double circular_distance(double a, double b)
{
    const double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

// Nearest member of `phase_set` under circular distance; ties go to the
// smaller set angle. `phase_set` must be sorted ascending.
inline double quantize_phase(double angle, std::span<const double> phase_set)
{
    if (phase_set.empty())
        throw InvalidInput("quantize_phase: empty phase set");
    const double a = wrap_angle(angle);
    double best = phase_set[0];
    double best_dist = circular_distance(a, best);
    for (std::size_t k = 1; k < phase_set.size(); ++k) {
        const double d = circular_distance(a, phase_set[k]);
        if (d < best_dist) {
            best_dist = d;
            best = phase_set[k];
        }
    }
    return best;
}

inline std::vector<double> quantize_phases(std::span<const double> phases, std::span<const double> phase_set)
{
    std::vector<double> out(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i)
        out[i] = quantize_phase(phases[i], phase_set);
    return out;
}

struct RisState {
    std::vector<double> phases;    // one angle per element, rad
    std::vector<double> phase_set; // admissible angles, ascending
    double mu_bar = 0.8;
    int bits = 3;
    double phi_max = deg2rad(306.82);
    bool quantized = false;        // every phase is a member of phase_set

    // All-zero phases (Phi = mu_bar * I). 0 is always a set member.
    static RisState initial(int n_elements, const RisParams &params)
    {
        if (n_elements < 1)
            throw InvalidInput("RisState: need at least one element");
        if (!(params.mu_bar > 0.0) || params.mu_bar > 1.0)
            throw InvalidInput("RisState: mu_bar must lie in (0, 1]");
        RisState s;
        s.phases.assign(static_cast<std::size_t>(n_elements), 0.0);
        s.phase_set = build_phase_set(params.phi_max, params.bits);
        s.mu_bar = params.mu_bar;
        s.bits = params.bits;
        s.phi_max = params.phi_max;
        s.quantized = true;
        return s;
    }

    int size() const { return static_cast<int>(phases.size()); }

    // Copy with new phases mapped onto the phase set.
    RisState with_quantized(std::span<const double> raw) const
    {
        RisState s = *this;
        s.phases = quantize_phases(raw, phase_set);
        s.quantized = true;
        return s;
    }

    RisState with_phases(std::vector<double> raw) const
    {
        RisState s = *this;
        s.phases = std::move(raw);
        s.quantized = false;
        return s;
    }

    // Reflection coefficients mu_bar * exp(j phi_n).
    ComplexVector coefficients() const
    {
        ComplexVector c(static_cast<Eigen::Index>(phases.size()));
        for (std::size_t i = 0; i < phases.size(); ++i)
            c(static_cast<Eigen::Index>(i)) = std::polar(mu_bar, phases[i]);
        return c;
    }
};

inline ComplexMatrix phi_matrix(const RisState &state)
{
    if (state.phases.empty())
        throw InvalidInput("phi_matrix: empty RIS state");
    return state.coefficients().asDiagonal();
}

// ---------------------------------------------------------------------------
// Graphene element physics
// ---------------------------------------------------------------------------

// Defaults other than patch_width are representative calibrations, not
// measured values of any particular device.
struct GrapheneParams {
    double temperature = 300.0;       // K
    double relaxation_time = 1e-13;   // s
    double fermi_velocity = 1e6;      // m/s
    double residual_density = 1e15;   // 1/m^2
    double capacitivity = 1e31;       // alpha_c, 1/(m^4 V^2)
    double v_cnp = 0.0;               // V
    double graphene_thickness = 0.34e-9; // m
    double patch_width = 66e-6;       // m
    int mode_integer = 1;

    double elementary_charge = 1.602176634e-19; // C
    double hbar = 1.054571817e-34;              // J s
    double boltzmann = 1.380649e-23;            // J/K
    double vacuum_permittivity = 8.8541878128e-12; // F/m
    double speed_of_light = 299792458.0;        // m/s

    void validate() const
    {
        if (!(temperature > 0.0) || !(relaxation_time > 0.0) || !(fermi_velocity > 0.0) ||
            !(residual_density >= 0.0) || !(capacitivity > 0.0) || !(graphene_thickness > 0.0) ||
            !(patch_width > 0.0) || mode_integer < 1)
            throw InvalidInput("GrapheneParams: parameters must be positive and mode_integer >= 1");
    }
};

// ln(2 cosh x) without overflow.
inline double log_two_cosh(double x)
{
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax));
}

// Intraband (Drude) surface conductivity, Siemens.
inline cplx graphene_conductivity(const GrapheneParams &p, double fermi_level_ev, double omega)
{
    if (!(omega > 0.0))
        throw InvalidInput("graphene_conductivity: omega must be positive");
    const double e = p.elementary_charge;
    const double kt = p.boltzmann * p.temperature;
    const double ef = fermi_level_ev * e;
    const double prefactor = 2.0 * e * e / (kPi * p.hbar * p.hbar) * kt * log_two_cosh(ef / (2.0 * kt));
    return prefactor * (cplx{0.0, 1.0} / cplx{omega, 1.0 / p.relaxation_time});
}

// |E_F| in eV from the gate voltage through the carrier density.
inline double fermi_level_from_voltage(const GrapheneParams &p, double v_g)
{
    const double dv = std::abs(p.v_cnp - v_g);
    const double n_d = std::sqrt(p.residual_density * p.residual_density + p.capacitivity * dv * dv);
    const double ef_joule = p.hbar * p.fermi_velocity * std::sqrt(kPi * n_d);
    return ef_joule / p.elementary_charge;
}

inline cplx effective_permittivity(const GrapheneParams &p, cplx sigma, double omega)
{
    return 1.0 + cplx{0.0, 1.0} * sigma / (omega * p.vacuum_permittivity * p.graphene_thickness);
}

// Reflection phase m*pi - a*k0*Re(n_eff), n_eff the principal root of eps_eff.
inline double element_phase_response(const GrapheneParams &p, double fermi_level_ev, double omega)
{
    const cplx sigma = graphene_conductivity(p, fermi_level_ev, omega);
    const cplx n_eff = std::sqrt(effective_permittivity(p, sigma, omega));
    const double k0 = omega / p.speed_of_light;
    return static_cast<double>(p.mode_integer) * kPi - p.patch_width * k0 * n_eff.real();
}

struct GrapheneSweepRow {
    double fermi_level_ev;
    cplx sigma;
    double phase_rad; // reduced into [0, 2pi)
};

inline std::vector<GrapheneSweepRow> graphene_sweep(const GrapheneParams &p, double omega, double ef_lo, double ef_hi,
                                                    int points)
{
    if (points < 2 || !(ef_hi > ef_lo))
        throw InvalidInput("graphene_sweep: need >= 2 points over a non-empty range");
    std::vector<GrapheneSweepRow> rows;
    rows.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double ef = ef_lo + (ef_hi - ef_lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        rows.push_back({ef, graphene_conductivity(p, ef, omega), wrap_angle(element_phase_response(p, ef, omega))});
    }
    return rows;
}

inline void write_graphene_csv(std::ostream &os, std::span<const GrapheneSweepRow> rows)
{
    os << "fermi_level_eV,sigma_re,sigma_im,phase_deg\n";
    char buf[160];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g\n", r.fermi_level_ev, r.sigma.real(), r.sigma.imag(),
                      rad2deg(r.phase_rad));
        os << buf;
    }
}

inline void write_phase_set_csv(std::ostream &os, std::span<const double> phase_set)
{
    os << "index,phase_rad,phase_deg\n";
    char buf[96];
    for (std::size_t k = 0; k < phase_set.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.9g,%.9g\n", k, phase_set[k], rad2deg(phase_set[k]));
        os << buf;
    }
}

} // namespace thzris
