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


// simulate: runs one experiment sweep and writes its CSV into --out.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "thzris/harness.hpp"

namespace fs = std::filesystem;
using namespace thzris;

namespace {

std::ofstream open_out(const fs::path &p)
{
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    if (!os)
        throw ConfigError("cannot write '" + p.string() + "'");
    return os;
}

int run(int argc, char **argv)
{
    CLI::App app{"Monte-Carlo sweeps for RIS-assisted THz MIMO links"};
    std::string config_path;
    std::string sweep;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> realizations;
    std::optional<int> threads;
    bool paper_scale = false;
    bool timing = false;
    app.add_option("--config", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
    app.add_option("--sweep", sweep, "snr | phase_max | bits | n_ms | n_ris | convergence | complexity")->required();
    app.add_option("--out", out_dir, "output directory")->required();
    app.add_option("--seed", seed, "master seed");
    app.add_option("--realizations", realizations, "channel realizations per sweep value");
    app.add_option("--threads", threads, "worker threads");
    app.add_flag("--paper-scale", paper_scale, "512/128/32 antennas and 1000 realizations (long-running)");
    app.add_flag("--timing", timing, "record wall-clock time in the wall_ms column");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const SweepKind kind = parse_sweep_kind(sweep);
    ExperimentSpec spec = paper_scale ? paper_scale_spec(kind) : desk_scale_spec(kind);
    bool values_from_config = false;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
        }
        apply_json(spec, j);
        values_from_config = j.contains("sweep_values");
    }
    if (spec.sweep_kind != kind) {
        spec.sweep_kind = kind;
        if (!values_from_config)
            spec.sweep_values = default_sweep_values(kind);
    }
    if (seed)
        spec.master_seed = *seed;
    if (realizations)
        spec.realizations = *realizations;
    if (threads)
        spec.threads = *threads;
    if (timing)
        spec.timing = true;
    spec.validate();

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());
    const fs::path out_path = fs::path(out_dir) / (std::string(sweep_kind_name(kind)) + ".csv");

    if (kind == SweepKind::complexity) {
        const auto rows = run_complexity(spec);
        auto os = open_out(out_path);
        write_complexity_csv(os, rows);
    } else if (kind == SweepKind::convergence) {
        const auto res = run_convergence(spec);
        auto os = open_out(out_path);
        write_convergence_csv(os, res);
    } else {
        auto os = open_out(out_path);
        write_sweep_header(os);
        os.flush();
        run_sweep(spec, [&os](std::span<const SweepRow> rows) {
            write_sweep_rows(os, rows);
            os.flush();
        });
    }
    std::printf("wrote %s\n", out_path.string().c_str());
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    try {
        return run(argc, argv);
    } catch (const ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const RealizationFailure &e) {
        std::fprintf(stderr, "numerical failure: %s\nreplay with --seed %llu --realizations 1\n", e.what(),
                     static_cast<unsigned long long>(e.seed()));
        return 3;
    } catch (const NumericalError &e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const InvalidInput &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
}
