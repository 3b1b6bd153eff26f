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

// Sparse geometric THz channels: one LoS path plus L scattered paths per hop,
// planar-array responses at both ends, spreading and molecular absorption loss.
//
// Hops:
//   bs_ris  H1 (N_RIS x N_BS), distance r_bar0, gain G_t
//   ris_ms  H2 (N_MS x N_RIS), distance r_tilde0, gain G_r
//   direct  BS -> MS (N_MS x N_BS), distance r0, gain G_t, LoS blocked

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "thzris/config.hpp"
#include "thzris/error.hpp"
#include "thzris/numerics.hpp"
#include "thzris/ris.hpp"
#include "thzris/rng.hpp"

namespace thzris {

enum class Hop { bs_ris, ris_ms, direct };

inline Hop parse_hop(std::string_view name)
{
    if (name == "bs_ris")
        return Hop::bs_ris;
    if (name == "ris_ms")
        return Hop::ris_ms;
    if (name == "direct")
        return Hop::direct;
    throw InvalidInput("unknown hop '" + std::string(name) + "'");
}

inline const char *hop_name(Hop hop)
{
    switch (hop) {
    case Hop::bs_ris: return "bs_ris";
    case Hop::ris_ms: return "ris_ms";
    case Hop::direct: return "direct";
    }
    throw InvalidInput("invalid hop tag");
}

// One propagation path of a hop. Angles in radians; r1/r2 are zero for LoS.
struct PathRecord {
    double aoa_az = 0.0;
    double aoa_el = 0.0;
    double aod_az = 0.0;
    double aod_el = 0.0;
    cplx gain{};
    bool los = false;
    double r1 = 0.0;
    double r2 = 0.0;
};

struct HopChannel {
    ComplexMatrix h;
    std::vector<PathRecord> paths;
};

struct ChannelRealization {
    ComplexMatrix h1; // N_RIS x N_BS
    ComplexMatrix h2; // N_MS x N_RIS
    std::optional<ComplexMatrix> h_direct; // N_MS x N_BS
    std::vector<PathRecord> h1_paths;
    std::vector<PathRecord> h2_paths;
    std::vector<PathRecord> direct_paths;
    std::uint64_t seed = 0;
};

// Normalized UPA response. Entry p*ny + q (p < nx, q < ny) is
// exp(j 2 pi d (p sin(el) cos(az) + q cos(el))) / sqrt(nx ny).
inline ComplexMatrix upa_response(double theta_az, double theta_el, int nx, int ny, double spacing_over_lambda)
{
    if (nx < 1 || ny < 1)
        throw InvalidInput("upa_response: grid dimensions must be >= 1");
    const int n = nx * ny;
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    const double ux = std::sin(theta_el) * std::cos(theta_az);
    const double uy = std::cos(theta_el);
    ComplexMatrix a(n, 1);
    for (int p = 0; p < nx; ++p)
        for (int q = 0; q < ny; ++q)
            a(p * ny + q, 0) = std::polar(norm, kTwoPi * spacing_over_lambda * (p * ux + q * uy));
    return a;
}

// Spreading loss, molecular absorption and propagation delay over `distance`.
inline cplx los_gain(const SystemConfig &cfg, double distance)
{
    if (!(distance > 0.0))
        throw InvalidInput("los_gain: distance must be positive");
    const double spread = cfg.c / (4.0 * kPi * cfg.f * distance);
    const double absorb = std::exp(-0.5 * cfg.kappa * distance);
    const double tau = distance / cfg.c;
    return std::polar(spread * absorb, -kTwoPi * cfg.f * tau);
}

// Reflected path over r1 + r2. The delay is tau_Los + (r1 + r2 - r)/c for the
// hop distance r, which equals (r1 + r2)/c for any r.
inline cplx nlos_gain(const SystemConfig &cfg, double r1, double r2)
{
    if (!(r1 > 0.0) || !(r2 > 0.0))
        throw InvalidInput("nlos_gain: r1 and r2 must be positive");
    const double total = r1 + r2;
    const double spread = cfg.c / (4.0 * kPi * cfg.f * total);
    const double absorb = std::exp(-0.5 * cfg.kappa * total);
    const double tau_ref = total / cfg.c;
    return std::polar(spread * absorb, -kTwoPi * cfg.f * tau_ref) * cfg.xi;
}

namespace detail {

struct HopGeometry {
    int n_tx;
    int n_rx;
    double tx_spacing;
    double rx_spacing;
    double distance;
    double gain;
    bool has_los;
};

inline HopGeometry hop_geometry(const SystemConfig &cfg, Hop hop)
{
    const double ant = cfg.antenna_spacing_wavelengths;
    const double ris = cfg.ris_spacing_wavelengths();
    switch (hop) {
    case Hop::bs_ris: return {cfg.n_bs, cfg.n_ris, ant, ris, cfg.r_bar0, cfg.g_t, true};
    case Hop::ris_ms: return {cfg.n_ris, cfg.n_ms, ris, ant, cfg.r_tilde0, cfg.g_r, true};
    case Hop::direct: return {cfg.n_bs, cfg.n_ms, ant, ant, cfg.r0, cfg.g_t, false};
    }
    throw InvalidInput("invalid hop tag");
}

} // namespace detail

// One hop of the geometric channel, deterministic in `seed`. Angles are drawn
// i.i.d. with azimuth in [0, 2pi) and elevation in [0, pi); scattered paths use
// r1 ~ U[r/2, r] and r2 = r - r1 + U[0, r/2] so that r1 + r2 >= r.
inline HopChannel generate_channel(const SystemConfig &cfg, Hop hop, std::uint64_t seed)
{
    const auto g = detail::hop_geometry(cfg, hop);
    const PlanarGrid tx_grid = planar_grid(g.n_tx);
    const PlanarGrid rx_grid = planar_grid(g.n_rx);
    Rng rng(seed);

    auto draw_angles = [&rng](PathRecord &rec) {
        rec.aoa_az = rng.uniform(0.0, kTwoPi);
        rec.aoa_el = rng.uniform(0.0, kPi);
        rec.aod_az = rng.uniform(0.0, kTwoPi);
        rec.aod_el = rng.uniform(0.0, kPi);
    };
    auto outer = [&](const PathRecord &rec) -> ComplexMatrix {
        const ComplexMatrix a_rx = upa_response(rec.aoa_az, rec.aoa_el, rx_grid.nx, rx_grid.ny, g.rx_spacing);
        const ComplexMatrix a_tx = upa_response(rec.aod_az, rec.aod_el, tx_grid.nx, tx_grid.ny, g.tx_spacing);
        return a_rx * a_tx.adjoint();
    };

    HopChannel out;
    out.h = ComplexMatrix::Zero(g.n_rx, g.n_tx);
    const double array_gain = std::sqrt(static_cast<double>(g.n_tx) * static_cast<double>(g.n_rx));

    if (g.has_los) {
        PathRecord rec;
        rec.los = true;
        draw_angles(rec);
        rec.gain = los_gain(cfg, g.distance);
        out.h += (array_gain * g.gain * rec.gain) * outer(rec);
        out.paths.push_back(rec);
    }
    if (cfg.l_paths > 0) {
        const double scale = array_gain / std::sqrt(static_cast<double>(cfg.l_paths));
        for (int l = 0; l < cfg.l_paths; ++l) {
            PathRecord rec;
            rec.r1 = rng.uniform(0.5 * g.distance, g.distance);
            rec.r2 = g.distance - rec.r1 + rng.uniform(0.0, 0.5 * g.distance);
            if (!(rec.r2 > 0.0))
                rec.r2 = 0.5 * g.distance; // only reachable through a zero-width draw at r1 == r
            draw_angles(rec);
            rec.gain = nlos_gain(cfg, rec.r1, rec.r2);
            out.h += (scale * g.gain * rec.gain) * outer(rec);
            out.paths.push_back(rec);
        }
    }
    return out;
}

// Stream indices used to derive per-hop seeds from a realization seed.
enum class SeedStream : std::uint64_t { bs_ris = 1, ris_ms = 2, direct = 3, random_phase = 4 };

inline std::uint64_t stream_seed(std::uint64_t realization_seed, SeedStream s)
{
    return derive_seed(realization_seed, static_cast<std::uint64_t>(s));
}

inline ChannelRealization generate_realization(const SystemConfig &cfg, std::uint64_t seed, bool with_direct = true)
{
    cfg.validate();
    ChannelRealization r;
    r.seed = seed;
    auto h1 = generate_channel(cfg, Hop::bs_ris, stream_seed(seed, SeedStream::bs_ris));
    auto h2 = generate_channel(cfg, Hop::ris_ms, stream_seed(seed, SeedStream::ris_ms));
    r.h1 = std::move(h1.h);
    r.h1_paths = std::move(h1.paths);
    r.h2 = std::move(h2.h);
    r.h2_paths = std::move(h2.paths);
    if (with_direct) {
        auto d = generate_channel(cfg, Hop::direct, stream_seed(seed, SeedStream::direct));
        r.h_direct = std::move(d.h);
        r.direct_paths = std::move(d.paths);
    }
    return r;
}

// H_e = H2 diag(mu_bar e^{j phi}) H1
inline ComplexMatrix cascade(const ComplexMatrix &h1, const RisState &phi, const ComplexMatrix &h2)
{
    const Eigen::Index n = static_cast<Eigen::Index>(phi.phases.size());
    if (h1.rows() != n || h2.cols() != n)
        throw DimensionError("cascade: H1 is " + std::to_string(h1.rows()) + "x" + std::to_string(h1.cols()) +
                             ", H2 is " + std::to_string(h2.rows()) + "x" + std::to_string(h2.cols()) + ", RIS has " +
                             std::to_string(n) + " elements");
    return h2 * (phi.coefficients().asDiagonal() * h1);
}

// ---------------------------------------------------------------------------
// JSON fixtures: {"rows": R, "cols": C, "data": [[re, im], ...]} in row-major order.
// ---------------------------------------------------------------------------

inline nlohmann::json matrix_to_json(const ComplexMatrix &m)
{
    nlohmann::json data = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const nlohmann::json &j)
{
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto &data = j.at("data");
    if (rows < 1 || cols < 1 || static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw DimensionError("matrix_from_json: entry count does not match dimensions");
    ComplexMatrix m(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index jdx = 0; jdx < cols; ++jdx, ++k)
            m(i, jdx) = {data[static_cast<std::size_t>(k)].at(0).get<double>(),
                         data[static_cast<std::size_t>(k)].at(1).get<double>()};
    return m;
}

inline nlohmann::json path_to_json(const PathRecord &p)
{
    return {{"aoa_az", p.aoa_az}, {"aoa_el", p.aoa_el}, {"aod_az", p.aod_az}, {"aod_el", p.aod_el},
            {"gain", {p.gain.real(), p.gain.imag()}}, {"los", p.los}, {"r1", p.r1}, {"r2", p.r2}};
}

inline PathRecord path_from_json(const nlohmann::json &j)
{
    PathRecord p;
    p.aoa_az = j.at("aoa_az").get<double>();
    p.aoa_el = j.at("aoa_el").get<double>();
    p.aod_az = j.at("aod_az").get<double>();
    p.aod_el = j.at("aod_el").get<double>();
    p.gain = {j.at("gain").at(0).get<double>(), j.at("gain").at(1).get<double>()};
    p.los = j.at("los").get<bool>();
    p.r1 = j.at("r1").get<double>();
    p.r2 = j.at("r2").get<double>();
    return p;
}

inline nlohmann::json realization_to_json(const ChannelRealization &r)
{
    auto paths = [](const std::vector<PathRecord> &v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto &p : v)
            a.push_back(path_to_json(p));
        return a;
    };
    nlohmann::json j{{"seed", r.seed},
                     {"h1", matrix_to_json(r.h1)},
                     {"h2", matrix_to_json(r.h2)},
                     {"h1_paths", paths(r.h1_paths)},
                     {"h2_paths", paths(r.h2_paths)}};
    if (r.h_direct) {
        j["h_direct"] = matrix_to_json(*r.h_direct);
        j["direct_paths"] = paths(r.direct_paths);
    }
    return j;
}

inline ChannelRealization realization_from_json(const nlohmann::json &j)
{
    auto paths = [](const nlohmann::json &a) {
        std::vector<PathRecord> v;
        for (const auto &p : a)
            v.push_back(path_from_json(p));
        return v;
    };
    ChannelRealization r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.h1 = matrix_from_json(j.at("h1"));
    r.h2 = matrix_from_json(j.at("h2"));
    r.h1_paths = paths(j.at("h1_paths"));
    r.h2_paths = paths(j.at("h2_paths"));
    if (j.contains("h_direct")) {
        r.h_direct = matrix_from_json(j.at("h_direct"));
        r.direct_paths = paths(j.at("direct_paths"));
    }
    if (r.h2.cols() != r.h1.rows())
        throw DimensionError("realization_from_json: H1 and H2 do not share the RIS dimension");
    return r;
}

} // namespace thzris
