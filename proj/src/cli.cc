/*
 * Copyright 2026 The MBQC Sampling Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mbqc/orchestrator.h"

namespace mbqc {

namespace {

template <typename T>
std::vector<T> parse_list(const std::string &text, const char *what) {
    std::vector<T> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::istringstream is(item);
        T v;
        if (!(is >> v) || !is.eof()) {
            throw ConfigError({std::string(what) + ": cannot parse '" + item + "'"});
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

int cli_main(int argc, char **argv, std::ostream &out) {
    CLI::App app{"Cluster-state sampling, verification and benchmarking"};
    std::string command, config_path, beta_text, sigmas_text, m_values_text;
    std::optional<uint64_t> seed, shots, K, M, K_mc;
    std::optional<size_t> threads, n, m, register_size, bootstrap;
    std::optional<double> sigma, gamma, xi, e1;
    std::optional<std::string> out_path, csv_path, samples_path, prep, cache_dir;
    bool correlated = false;

    std::string commands;
    for (const auto &c : known_commands()) {
        commands += (commands.empty() ? "" : " | ") + c;
    }
    app.add_option("command", command, commands);
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--threads", threads, "worker threads (results do not depend on it)");
    app.add_option("--out", out_path, "results JSON path");
    app.add_option("--csv", csv_path, "table output path");
    app.add_option("--samples", samples_path, "sample batch path (.jsonl or .bin)");
    app.add_option("--n", n, "lattice rows");
    app.add_option("--m", m, "lattice columns");
    app.add_option("--beta", beta_text, "comma-separated angle indices 0..7, site order");
    app.add_option("--sigma", sigma, "Gaussian Z noise strength");
    app.add_flag("--correlated", correlated, "one Gaussian Z angle per slot shared by all qubits");
    app.add_option("--gamma", gamma, "depolarizing strength");
    app.add_option("--xi", xi, "dephasing strength");
    app.add_option("--shots", shots, "number of shots");
    app.add_option("--K", K, "outer samples (group elements, circuits)");
    app.add_option("--M", M, "shots per outer sample");
    app.add_option("--register-size", register_size, "live register size for recycled sampling");
    app.add_option("--prep", prep, "frame | trajectory | density | compiled-trajectory | compiled-density");
    app.add_option("--bootstrap", bootstrap, "bootstrap iterations");
    app.add_option("--K-mc", K_mc, "Monte Carlo circuits for ideal XEB values");
    app.add_option("--cache-dir", cache_dir, "cache directory for ideal XEB values");
    app.add_option("--e1", e1, "per-qubit measurement error");
    app.add_option("--sigmas", sigmas_text, "comma-separated noise-sweep grid");
    app.add_option("--m-values", m_values_text, "comma-separated column counts for dalzell");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        out << nlohmann::json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump(2) << '\n';
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                throw ConfigError({"config: cannot open " + config_path});
            }
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error &e) {
                throw ConfigError({std::string("config: ") + e.what()});
            }
            cfg = j.get<RunConfig>();
        }
        std::vector<std::string> problems;
        if (!command.empty()) {
            cfg.command = command;
        }
        if (seed) cfg.seed = *seed;
        if (threads) cfg.threads = *threads;
        if (out_path) cfg.out = *out_path;
        if (csv_path) cfg.csv = *csv_path;
        if (samples_path) cfg.samples = *samples_path;
        if (n) cfg.lattice.n = *n;
        if (m) cfg.lattice.m = *m;
        if (shots) cfg.shots = *shots;
        if (K) cfg.K = *K;
        if (M) cfg.M = *M;
        if (register_size) cfg.register_size = *register_size;
        if (prep) cfg.prep = *prep;
        if (bootstrap) cfg.bootstrap = *bootstrap;
        if (K_mc) cfg.K_mc = *K_mc;
        if (cache_dir) cfg.cache_dir = *cache_dir;
        if (e1) cfg.e1 = *e1;
        if (int(bool(sigma)) + int(bool(gamma)) + int(bool(xi)) > 1) {
            problems.push_back("noise: --sigma, --gamma and --xi are mutually exclusive");
        } else if (sigma) {
            cfg.noise = NoiseSpec::gaussian_z(*sigma, correlated);
        } else if (gamma) {
            cfg.noise = NoiseSpec::depolarizing(*gamma);
        } else if (xi) {
            cfg.noise = NoiseSpec::dephasing(*xi);
        } else if (correlated) {
            cfg.noise.correlated = true;
        }
        try {
            if (!beta_text.empty()) {
                auto k = parse_list<int>(beta_text, "beta");
                std::vector<uint8_t> v;
                for (int x : k) {
                    if (x < 0 || x > 7) {
                        throw ConfigError({"beta: entries must lie in 0..7"});
                    }
                    v.push_back(static_cast<uint8_t>(x));
                }
                cfg.beta = AngleGrid(v);
            }
            if (!sigmas_text.empty()) {
                cfg.sigmas = parse_list<double>(sigmas_text, "sigmas");
            }
            if (!m_values_text.empty()) {
                cfg.m_values = parse_list<size_t>(m_values_text, "m_values");
            }
        } catch (const ConfigError &e) {
            problems.insert(problems.end(), e.violations().begin(), e.violations().end());
        }
        if (!problems.empty()) {
            for (const auto &v : cfg.violations()) {
                problems.push_back(v);
            }
            throw ConfigError(problems);
        }
        out << run(cfg).dump(2) << '\n';
        return 0;
    } catch (const ConfigError &e) {
        out << error_json(e).dump(2) << '\n';
        return 2;
    } catch (const std::exception &e) {
        out << error_json(e).dump(2) << '\n';
        return 1;
    }
}

}  // namespace mbqc
