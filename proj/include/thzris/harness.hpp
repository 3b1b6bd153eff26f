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


// Seeded Monte-Carlo experiment runner: sweeps over SNR, phase span, phase
// resolution and array sizes, convergence curves, cost tables and CSV output.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "thzris/ao_optimizer.hpp"
#include "thzris/beamforming.hpp"
#include "thzris/channel.hpp"
#include "thzris/complexity.hpp"
#include "thzris/config.hpp"
#include "thzris/error.hpp"
#include "thzris/gd_optimizer.hpp"
#include "thzris/ris.hpp"
#include "thzris/rng.hpp"

namespace thzris {

enum class SweepKind { snr, phase_max, bits, n_ms, n_ris, convergence, complexity };
enum class Algorithm { a_gd, c_gd, ao, random_phase, no_ris };

inline constexpr int kAlgorithmCount = 5;

inline const char *sweep_kind_name(SweepKind k)
{
    switch (k) {
    case SweepKind::snr: return "snr";
    case SweepKind::phase_max: return "phase_max";
    case SweepKind::bits: return "bits";
    case SweepKind::n_ms: return "n_ms";
    case SweepKind::n_ris: return "n_ris";
    case SweepKind::convergence: return "convergence";
    case SweepKind::complexity: return "complexity";
    }
    return "?";
}

inline SweepKind parse_sweep_kind(const std::string &s)
{
    for (SweepKind k : {SweepKind::snr, SweepKind::phase_max, SweepKind::bits, SweepKind::n_ms, SweepKind::n_ris,
                        SweepKind::convergence, SweepKind::complexity})
        if (s == sweep_kind_name(k))
            return k;
    throw ConfigError("unknown sweep kind '" + s + "'");
}

inline const char *algorithm_name(Algorithm a)
{
    switch (a) {
    case Algorithm::a_gd: return "a_gd";
    case Algorithm::c_gd: return "c_gd";
    case Algorithm::ao: return "ao";
    case Algorithm::random_phase: return "random_phase";
    case Algorithm::no_ris: return "no_ris";
    }
    return "?";
}

inline Algorithm parse_algorithm(const std::string &s)
{
    for (Algorithm a : {Algorithm::a_gd, Algorithm::c_gd, Algorithm::ao, Algorithm::random_phase, Algorithm::no_ris})
        if (s == algorithm_name(a))
            return a;
    throw ConfigError("unknown algorithm '" + s + "'");
}

inline std::vector<double> default_sweep_values(SweepKind k)
{
    switch (k) {
    case SweepKind::snr: return {-10, -5, 0, 5, 10, 15, 20};
    case SweepKind::phase_max: return {60, 120, 180, 240, 306.82, 360};
    case SweepKind::bits: return {1, 2, 3, 4};
    case SweepKind::n_ms: return {8, 16, 24, 32};
    case SweepKind::n_ris: return {8, 16, 32, 64};
    case SweepKind::convergence: return {10};
    case SweepKind::complexity: return {16, 32, 64, 128, 192, 256};
    }
    return {};
}

struct ExperimentSpec {
    SweepKind sweep_kind = SweepKind::snr;
    std::vector<double> sweep_values = default_sweep_values(SweepKind::snr);
    SystemConfig base{};
    RisParams ris{};
    std::vector<Algorithm> algorithms{Algorithm::a_gd, Algorithm::c_gd, Algorithm::ao, Algorithm::random_phase,
                                      Algorithm::no_ris};
    int realizations = 50;
    std::uint64_t master_seed = 1;
    double snr_db = 10.0;       // operating SNR for sweeps over anything else
    int gd_iterations = 100;    // A-GD
    int cgd_iterations = 100;   // C-GD
    int ao_max_outer = 10;
    double ao_tol = 1e-3;
    int complexity_outer = 3;   // AO outer iterations charged in the cost table
    int threads = 1;
    bool timing = false;        // record wall_ms; off keeps output byte-reproducible

    void validate() const
    {
        if (sweep_values.empty())
            throw ConfigError("sweep_values must not be empty");
        if (realizations < 1)
            throw ConfigError("realizations must be >= 1");
        if (algorithms.empty())
            throw ConfigError("algorithms must not be empty");
        if (gd_iterations < 0 || cgd_iterations < 0 || ao_max_outer < 0 || complexity_outer < 0)
            throw ConfigError("iteration counts must be >= 0");
        if (!(ao_tol >= 0.0))
            throw ConfigError("ao_tol must be >= 0");
        if (threads < 1)
            throw ConfigError("threads must be >= 1");
        try {
            base.validate();
        } catch (const InvalidInput &e) {
            throw ConfigError(e.what());
        }
    }
};

// Desk scale: 64 / 32 / 16 antennas, 50 realizations.
inline ExperimentSpec desk_scale_spec(SweepKind kind = SweepKind::snr)
{
    ExperimentSpec s;
    s.sweep_kind = kind;
    s.sweep_values = default_sweep_values(kind);
    s.base.rho = db_to_linear(s.snr_db) * s.base.delta_sq;
    return s;
}

// 512 / 128 / 32 antennas and 1000 realizations. Long-running.
inline ExperimentSpec paper_scale_spec(SweepKind kind = SweepKind::snr)
{
    ExperimentSpec s = desk_scale_spec(kind);
    s.base.n_bs = 512;
    s.base.n_ris = 128;
    s.base.n_ms = 32;
    s.realizations = 1000;
    return s;
}

// ---------------------------------------------------------------------------
// JSON configuration
// ---------------------------------------------------------------------------

namespace detail {

inline void reject_unknown(const nlohmann::json &j, std::initializer_list<const char *> known, const char *where)
{
    if (!j.is_object())
        throw ConfigError(std::string(where) + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char *k : known)
            ok = ok || it.key() == k;
        if (!ok)
            throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
    }
}

template <class T>
void read_opt(const nlohmann::json &j, const char *key, T &dst)
{
    if (!j.contains(key))
        return;
    try {
        dst = j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

inline void read_system(const nlohmann::json &j, SystemConfig &c)
{
    reject_unknown(j,
                   {"f", "n_bs", "n_ris", "n_ms", "m_bs", "m_ms", "n_s", "rho", "delta_sq", "g_t_dbi", "g_r_dbi",
                    "kappa", "xi", "r0", "r_bar0", "r_tilde0", "l_paths", "c", "antenna_spacing_wavelengths",
                    "ris_element_size"},
                   "base");
    read_opt(j, "f", c.f);
    read_opt(j, "n_bs", c.n_bs);
    read_opt(j, "n_ris", c.n_ris);
    read_opt(j, "n_ms", c.n_ms);
    read_opt(j, "m_bs", c.m_bs);
    read_opt(j, "m_ms", c.m_ms);
    read_opt(j, "n_s", c.n_s);
    read_opt(j, "rho", c.rho);
    read_opt(j, "delta_sq", c.delta_sq);
    if (j.contains("g_t_dbi")) {
        double v = 0;
        read_opt(j, "g_t_dbi", v);
        c.g_t = dbi_to_linear(v);
    }
    if (j.contains("g_r_dbi")) {
        double v = 0;
        read_opt(j, "g_r_dbi", v);
        c.g_r = dbi_to_linear(v);
    }
    read_opt(j, "kappa", c.kappa);
    read_opt(j, "xi", c.xi);
    read_opt(j, "r0", c.r0);
    read_opt(j, "r_bar0", c.r_bar0);
    read_opt(j, "r_tilde0", c.r_tilde0);
    read_opt(j, "l_paths", c.l_paths);
    read_opt(j, "c", c.c);
    read_opt(j, "antenna_spacing_wavelengths", c.antenna_spacing_wavelengths);
    read_opt(j, "ris_element_size", c.ris_element_size);
}

} // namespace detail

// Applies the keys present in `j` on top of `spec`. When "snr_db" is given and
// "base.rho" is not, rho follows the SNR.
inline void apply_json(ExperimentSpec &spec, const nlohmann::json &j)
{
    using detail::read_opt;
    detail::reject_unknown(j,
                           {"sweep_kind", "sweep_values", "base", "ris", "algorithms", "realizations", "master_seed",
                            "snr_db", "gd_iterations", "cgd_iterations", "ao_max_outer", "ao_tol",
                            "complexity_outer", "threads", "timing"},
                           "config");
    if (j.contains("sweep_kind")) {
        std::string k;
        read_opt(j, "sweep_kind", k);
        spec.sweep_kind = parse_sweep_kind(k);
        if (!j.contains("sweep_values"))
            spec.sweep_values = default_sweep_values(spec.sweep_kind);
    }
    read_opt(j, "sweep_values", spec.sweep_values);
    if (j.contains("base"))
        detail::read_system(j.at("base"), spec.base);
    if (j.contains("ris")) {
        const auto &r = j.at("ris");
        detail::reject_unknown(r, {"phi_max_deg", "bits", "mu_bar"}, "ris");
        if (r.contains("phi_max_deg")) {
            double deg = 0;
            read_opt(r, "phi_max_deg", deg);
            spec.ris.phi_max = deg2rad(deg);
        }
        read_opt(r, "bits", spec.ris.bits);
        read_opt(r, "mu_bar", spec.ris.mu_bar);
    }
    if (j.contains("algorithms")) {
        std::vector<std::string> names;
        read_opt(j, "algorithms", names);
        spec.algorithms.clear();
        for (const auto &n : names)
            spec.algorithms.push_back(parse_algorithm(n));
    }
    read_opt(j, "realizations", spec.realizations);
    read_opt(j, "master_seed", spec.master_seed);
    read_opt(j, "snr_db", spec.snr_db);
    if (j.contains("snr_db") && !(j.contains("base") && j.at("base").contains("rho")))
        spec.base.rho = db_to_linear(spec.snr_db) * spec.base.delta_sq;
    read_opt(j, "gd_iterations", spec.gd_iterations);
    read_opt(j, "cgd_iterations", spec.cgd_iterations);
    read_opt(j, "ao_max_outer", spec.ao_max_outer);
    read_opt(j, "ao_tol", spec.ao_tol);
    read_opt(j, "complexity_outer", spec.complexity_outer);
    read_opt(j, "threads", spec.threads);
    read_opt(j, "timing", spec.timing);
}

inline ExperimentSpec load_spec(const std::string &path, ExperimentSpec spec = desk_scale_spec())
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    apply_json(spec, j);
    return spec;
}

// ---------------------------------------------------------------------------
// Realizations
// ---------------------------------------------------------------------------

// A numerical failure tied to the realization that produced it.
class RealizationFailure : public NumericalError {
public:
    RealizationFailure(std::uint64_t seed, const std::string &what)
        : NumericalError("realization seed " + std::to_string(seed) + ": " + what), seed_(seed)
    {
    }
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

struct RunOptions {
    int gd_iterations = 100;
    int cgd_iterations = 100;
    int ao_max_outer = 10;
    double ao_tol = 1e-3;
};

inline RunOptions run_options(const ExperimentSpec &s)
{
    return {s.gd_iterations, s.cgd_iterations, s.ao_max_outer, s.ao_tol};
}

struct RealizationRates {
    std::array<double, kAlgorithmCount> rate{};
    std::array<bool, kAlgorithmCount> present{};

    double operator[](Algorithm a) const { return rate[static_cast<std::size_t>(a)]; }
};

inline std::vector<double> random_phases(const RisState &tmpl, std::uint64_t realization_seed)
{
    Rng rng(stream_seed(realization_seed, SeedStream::random_phase));
    std::vector<double> ph(tmpl.phases.size());
    for (auto &p : ph)
        p = tmpl.phase_set[rng.below(tmpl.phase_set.size())];
    return ph;
}

inline RealizationRates run_realization(const SystemConfig &cfg, const RisParams &ris,
                                        std::span<const Algorithm> algorithms, std::uint64_t seed,
                                        const RunOptions &opt = {})
{
    bool need_direct = false;
    for (Algorithm a : algorithms)
        need_direct = need_direct || a == Algorithm::no_ris;
    const ChannelRealization ch = generate_realization(cfg, seed, need_direct);
    const RisState tmpl = RisState::initial(cfg.n_ris, ris);

    RealizationRates out;
    for (Algorithm a : algorithms) {
        double r = 0.0;
        switch (a) {
        case Algorithm::a_gd: r = a_gd_optimize(ch.h1, ch.h2, cfg, tmpl, {opt.gd_iterations, false}).rate; break;
        case Algorithm::c_gd: {
            const double lambda = calibrate_fixed_step(ch.h1, ch.h2, tmpl.mu_bar);
            r = c_gd_optimize(ch.h1, ch.h2, cfg, tmpl, lambda, {opt.cgd_iterations, false}).rate;
            break;
        }
        case Algorithm::ao: r = ao_optimize(ch.h1, ch.h2, cfg, tmpl, {opt.ao_max_outer, opt.ao_tol}).rate; break;
        case Algorithm::random_phase:
            r = optimal_rate(cascade(ch.h1, tmpl.with_quantized(random_phases(tmpl, seed)), ch.h2), cfg);
            break;
        case Algorithm::no_ris: r = optimal_rate(*ch.h_direct, cfg); break;
        }
        out.rate[static_cast<std::size_t>(a)] = r;
        out.present[static_cast<std::size_t>(a)] = true;
    }
    return out;
}

namespace detail {

// Runs job(i) for i in [0, n) on `threads` workers. Each index is claimed once;
// the first exception stops further claims and is rethrown.
template <class Job>
void parallel_for(int n, int threads, Job &&job)
{
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<bool> stop{false};
    auto worker = [&] {
        for (;;) {
            if (stop.load())
                return;
            const int i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                stop = true;
                return;
            }
        }
    };
    const int t = std::max(1, std::min(threads, n));
    if (t == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(t));
        for (int k = 0; k < t; ++k)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);
}

inline std::uint64_t realization_seed(std::uint64_t master, int index)
{
    return master + static_cast<std::uint64_t>(index);
}

template <class Job>
auto guarded(std::uint64_t seed, Job &&job)
{
    try {
        return job();
    } catch (const RealizationFailure &) {
        throw;
    } catch (const NumericalError &e) {
        throw RealizationFailure(seed, e.what());
    }
}

} // namespace detail

// (cfg, ris) with one sweep value applied.
inline std::pair<SystemConfig, RisParams> apply_sweep_value(const ExperimentSpec &spec, double value)
{
    SystemConfig cfg = spec.base;
    RisParams ris = spec.ris;
    switch (spec.sweep_kind) {
    case SweepKind::snr: cfg.rho = db_to_linear(value) * cfg.delta_sq; break;
    case SweepKind::phase_max: ris.phi_max = deg2rad(value); break;
    case SweepKind::bits: ris.bits = static_cast<int>(std::lround(value)); break;
    case SweepKind::n_ms: cfg.n_ms = static_cast<int>(std::lround(value)); break;
    case SweepKind::n_ris: cfg.n_ris = static_cast<int>(std::lround(value)); break;
    case SweepKind::convergence:
    case SweepKind::complexity: break;
    }
    try {
        cfg.validate();
        (void)build_phase_set(ris.phi_max, ris.bits);
    } catch (const InvalidInput &e) {
        throw ConfigError(std::string("sweep value ") + std::to_string(value) + ": " + e.what());
    }
    return {cfg, ris};
}

struct SweepRow {
    double sweep_value = 0.0;
    Algorithm algorithm = Algorithm::a_gd;
    double mean_rate = 0.0;
    double std_rate = 0.0;
    int n_real = 0;
    double wall_ms = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    // rates[v][a][i]: realization i of algorithm a at sweep value v
    std::vector<std::vector<std::vector<double>>> samples;
};

// Population standard deviation around the mean, two passes in index order.
inline std::pair<double, double> mean_std(std::span<const double> xs)
{
    if (xs.empty())
        return {0.0, 0.0};
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size()))};
}

using SweepCallback = std::function<void(std::span<const SweepRow>)>;

inline SweepResult run_sweep(const ExperimentSpec &spec, const SweepCallback &on_value = {})
{
    spec.validate();
    if (spec.sweep_kind == SweepKind::convergence || spec.sweep_kind == SweepKind::complexity)
        throw ConfigError(std::string("run_sweep does not handle the '") + sweep_kind_name(spec.sweep_kind) +
                          "' kind");
    const RunOptions opt = run_options(spec);
    SweepResult out;
    for (double value : spec.sweep_values) {
        const auto [cfg, ris] = apply_sweep_value(spec, value);
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<RealizationRates> per(static_cast<std::size_t>(spec.realizations));
        detail::parallel_for(spec.realizations, spec.threads, [&](int i) {
            const std::uint64_t seed = detail::realization_seed(spec.master_seed, i);
            per[static_cast<std::size_t>(i)] =
                detail::guarded(seed, [&] { return run_realization(cfg, ris, spec.algorithms, seed, opt); });
        });
        const double ms =
            spec.timing ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()
                        : 0.0;

        std::vector<std::vector<double>> by_alg(kAlgorithmCount);
        const std::size_t first = out.rows.size();
        for (Algorithm a : spec.algorithms) {
            auto &xs = by_alg[static_cast<std::size_t>(a)];
            for (const auto &r : per)
                xs.push_back(r[a]);
            const auto [mean, sd] = mean_std(xs);
            out.rows.push_back({value, a, mean, sd, spec.realizations, ms});
        }
        out.samples.push_back(std::move(by_alg));
        if (on_value)
            on_value(std::span<const SweepRow>(out.rows).subspan(first));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Convergence
// ---------------------------------------------------------------------------

struct ConvergenceSample {
    std::vector<double> a_gd;  // best rate so far after each inner iteration, index 0 = start
    std::vector<double> c_gd;
    std::vector<double> ao;    // best rate so far after each outer iteration
    std::vector<double> a_gd_energy; // incumbent cascaded energy per iteration
    std::vector<double> c_gd_energy;
    double a_gd_rate = 0.0;    // final quantized rate
    double c_gd_rate = 0.0;
    double ao_rate = 0.0;
    int ao_outer_iterations = 0;
    bool ao_converged = false;
};

struct ConvergenceResult {
    std::vector<double> a_gd; // mean curves
    std::vector<double> c_gd;
    std::vector<double> ao;
    std::vector<ConvergenceSample> samples;
};

namespace detail {

inline std::vector<double> running_max(std::span<const double> xs)
{
    std::vector<double> out(xs.begin(), xs.end());
    for (std::size_t i = 1; i < out.size(); ++i)
        out[i] = std::max(out[i], out[i - 1]);
    return out;
}

// Mean over samples, each padded with its last value to the longest length.
inline std::vector<double> mean_curve(const std::vector<const std::vector<double> *> &curves)
{
    std::size_t len = 0;
    for (const auto *c : curves)
        len = std::max(len, c->size());
    std::vector<double> out(len, 0.0);
    for (std::size_t k = 0; k < len; ++k) {
        double s = 0.0;
        for (const auto *c : curves)
            s += c->empty() ? 0.0 : (*c)[std::min(k, c->size() - 1)];
        out[k] = s / static_cast<double>(curves.size());
    }
    return out;
}

} // namespace detail

inline ConvergenceSample run_convergence_realization(const SystemConfig &cfg, const RisParams &ris,
                                                     std::uint64_t seed, const RunOptions &opt)
{
    const ChannelRealization ch = generate_realization(cfg, seed, false);
    const RisState tmpl = RisState::initial(cfg.n_ris, ris);
    ConvergenceSample s;
    const GdResult a = a_gd_optimize(ch.h1, ch.h2, cfg, tmpl, {opt.gd_iterations, true});
    const double lambda = calibrate_fixed_step(ch.h1, ch.h2, tmpl.mu_bar);
    const GdResult c = c_gd_optimize(ch.h1, ch.h2, cfg, tmpl, lambda, {opt.cgd_iterations, true});
    const AoResult ao = ao_optimize(ch.h1, ch.h2, cfg, tmpl, {opt.ao_max_outer, opt.ao_tol});
    s.a_gd = a.rate_curve;
    s.c_gd = c.rate_curve;
    s.ao = detail::running_max(ao.history);
    for (const auto &h : a.history)
        s.a_gd_energy.push_back(h.incumbent);
    for (const auto &h : c.history)
        s.c_gd_energy.push_back(h.incumbent);
    s.a_gd_rate = a.rate;
    s.c_gd_rate = c.rate;
    s.ao_rate = ao.rate;
    s.ao_outer_iterations = ao.outer_iterations;
    s.ao_converged = ao.converged;
    return s;
}

inline ConvergenceResult run_convergence(const ExperimentSpec &spec)
{
    spec.validate();
    ExperimentSpec s = spec;
    s.sweep_kind = SweepKind::convergence;
    const auto [cfg, ris] = apply_sweep_value(s, 0.0);
    const RunOptions opt = run_options(spec);
    ConvergenceResult out;
    out.samples.resize(static_cast<std::size_t>(spec.realizations));
    detail::parallel_for(spec.realizations, spec.threads, [&](int i) {
        const std::uint64_t seed = detail::realization_seed(spec.master_seed, i);
        out.samples[static_cast<std::size_t>(i)] =
            detail::guarded(seed, [&] { return run_convergence_realization(cfg, ris, seed, opt); });
    });
    std::vector<const std::vector<double> *> a, c, o;
    for (const auto &x : out.samples) {
        a.push_back(&x.a_gd);
        c.push_back(&x.c_gd);
        o.push_back(&x.ao);
    }
    out.a_gd = detail::mean_curve(a);
    out.c_gd = detail::mean_curve(c);
    out.ao = detail::mean_curve(o);
    return out;
}

// ---------------------------------------------------------------------------
// Complexity
// ---------------------------------------------------------------------------

inline std::vector<CostRow> run_complexity(const ExperimentSpec &spec)
{
    if (spec.sweep_values.empty())
        throw ConfigError("sweep_values must not be empty");
    CostModel m;
    m.n_bs = static_cast<std::uint64_t>(spec.base.n_bs);
    m.n_ms = static_cast<std::uint64_t>(spec.base.n_ms);
    m.m_bs = static_cast<std::uint64_t>(spec.base.m_bs);
    m.n_s = static_cast<std::uint64_t>(spec.base.n_s);
    m.b = spec.ris.bits;
    m.i_a = static_cast<std::uint64_t>(spec.gd_iterations);
    m.i_c = static_cast<std::uint64_t>(spec.cgd_iterations);
    m.i_o = static_cast<std::uint64_t>(spec.complexity_outer);
    std::vector<CostRow> rows;
    for (double v : spec.sweep_values) {
        if (!(v >= 1.0) || v != std::floor(v))
            throw ConfigError("complexity sweep values must be positive integers");
        rows.push_back(cost_row(m, static_cast<std::uint64_t>(v)));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline void write_sweep_header(std::ostream &os) { os << "sweep_value,algorithm,mean_rate_bpshz,std_rate,n_real,wall_ms\n"; }

inline void write_sweep_rows(std::ostream &os, std::span<const SweepRow> rows)
{
    char buf[192];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%.9g,%s,%.9g,%.9g,%d,%.9g\n", r.sweep_value, algorithm_name(r.algorithm),
                      r.mean_rate, r.std_rate, r.n_real, r.wall_ms);
        os << buf;
    }
}

inline void write_sweep_csv(std::ostream &os, const SweepResult &res)
{
    write_sweep_header(os);
    write_sweep_rows(os, res.rows);
}

inline void write_convergence_csv(std::ostream &os, const ConvergenceResult &res)
{
    os << "iteration,algorithm,mean_rate_bpshz\n";
    char buf[128];
    auto emit = [&](const char *name, const std::vector<double> &curve) {
        for (std::size_t k = 0; k < curve.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%zu,%s,%.9g\n", k, name, curve[k]);
            os << buf;
        }
    };
    emit("a_gd", res.a_gd);
    emit("c_gd", res.c_gd);
    emit("ao", res.ao);
}

} // namespace thzris
