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

#pragma once

#include <cmath>
#include <string>

#include "thzris/error.hpp"

namespace thzris {

inline double dbi_to_linear(double dbi) { return std::pow(10.0, dbi / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Scalar physical and system parameters of one link. Gains are linear; the
// dBi conversion happens once when a configuration is loaded.
struct SystemConfig {
    double f = 1.6e12;          // carrier frequency, Hz
    int n_bs = 64;              // BS antennas
    int n_ris = 32;             // RIS elements
    int n_ms = 16;              // MS antennas
    int m_bs = 6;               // BS RF chains
    int m_ms = 4;               // MS RF chains
    int n_s = 1;                // data streams
    double rho = 10.0;          // transmit power (linear)
    double delta_sq = 1.0;      // noise power (linear)
    double g_t = dbi_to_linear(55.0);
    double g_r = dbi_to_linear(55.0);
    double kappa = 0.2;         // molecular absorption coefficient, 1/m
    double xi = 1e-6;           // reflection coefficient of the scattering material
    double r0 = 25.0;           // BS-MS distance, m
    double r_bar0 = 10.0;       // BS-RIS distance, m
    double r_tilde0 = 20.0;     // RIS-MS distance, m
    int l_paths = 2;            // NLoS paths per hop
    double c = 3e8;             // speed of light, m/s
    double antenna_spacing_wavelengths = 0.5;
    double ris_element_size = 70e-6; // RIS element side length, m

    double wavelength() const { return c / f; }
    double ris_spacing_wavelengths() const { return ris_element_size / wavelength(); }
    double snr_linear() const { return rho / delta_sq; }

    void validate() const
    {
        auto fail = [](const std::string &msg) { throw InvalidInput("SystemConfig: " + msg); };
        if (n_s < 1)
            fail("n_s must be >= 1");
        if (!(n_bs > m_bs && m_bs >= n_s))
            fail("need n_bs > m_bs >= n_s");
        if (!(n_ms > m_ms && m_ms >= n_s))
            fail("need n_ms > m_ms >= n_s");
        if (n_ris < 1)
            fail("n_ris must be >= 1");
        if (l_paths < 0)
            fail("l_paths must be >= 0");
        if (!(f > 0.0) || !(c > 0.0))
            fail("f and c must be positive");
        if (!(rho > 0.0) || !(delta_sq > 0.0))
            fail("rho and delta_sq must be positive");
        if (!(r0 > 0.0) || !(r_bar0 > 0.0) || !(r_tilde0 > 0.0))
            fail("distances must be positive");
        if (!(g_t > 0.0) || !(g_r > 0.0))
            fail("antenna gains must be positive");
        if (!(kappa >= 0.0) || !(xi >= 0.0))
            fail("kappa and xi must be non-negative");
        if (!(antenna_spacing_wavelengths > 0.0) || !(ris_element_size > 0.0))
            fail("element spacings must be positive");
    }
};

// Declared two-dimensional layout of an N-element planar array.
struct PlanarGrid {
    int nx = 1;
    int ny = 1;
};

// nx = ny = sqrt(N) for perfect squares, otherwise nx is the largest power of
// two dividing N that does not exceed sqrt(N).
inline PlanarGrid planar_grid(int n)
{
    if (n < 1)
        throw InvalidInput("planar_grid: element count must be >= 1");
    int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    while (root * root > n)
        --root;
    while ((root + 1) * (root + 1) <= n)
        ++root;
    if (root * root == n)
        return {root, root};
    int nx = 1;
    for (int p = 2; p * p <= n; p *= 2)
        if (n % p == 0)
            nx = p;
    return {nx, n / nx};
}

} // namespace thzris
