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

#include "mbqc/run_config.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "mbqc/rng.h"
#include "mbqc/tolerances.h"

namespace mbqc {

namespace {

const std::set<std::string> kPrepModes = {"frame", "trajectory", "density", "compiled-trajectory", "compiled-density"};

std::string join(const std::vector<std::string> &v) {
    std::string s;
    for (const auto &x : v) {
        s += (s.empty() ? "" : "; ") + x;
    }
    return s;
}

bool is_density_mode(const std::string &prep) {
    return prep == "density" || prep == "compiled-density";
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::invalid_argument("invalid configuration: " + join(violations)), violations_(std::move(violations)) {}

AngleGrid RunConfig::resolved_beta() const {
    if (beta) {
        return *beta;
    }
    Rng rng = make_rng(seed, "beta", 0);
    return AngleGrid::random(lattice.num_sites(), rng);
}

size_t RunConfig::resolved_register_size() const {
    return register_size == 0 ? lattice.n + 1 : register_size;
}

std::vector<double> RunConfig::resolved_sigmas() const {
    if (!sigmas.empty()) {
        return sigmas;
    }
    std::vector<double> out;
    for (int i = 0; i <= 10; i++) {
        out.push_back(0.02 * std::numbers::pi * i);
    }
    return out;
}

std::vector<size_t> RunConfig::resolved_m_values() const {
    if (!m_values.empty()) {
        return m_values;
    }
    std::vector<size_t> out;
    for (size_t m = 2; m <= std::max<size_t>(lattice.m, 2); m++) {
        out.push_back(m);
    }
    return out;
}

std::vector<std::string> RunConfig::violations() const {
    std::vector<std::string> v;
    const auto &cmds = known_commands();
    if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) {
        v.push_back("command: unknown subcommand '" + command + "'");
    }
    bool lattice_ok = true;
    if (lattice.n < 1) {
        v.push_back("lattice.n: must be >= 1");
        lattice_ok = false;
    }
    if (lattice.m < 1) {
        v.push_back("lattice.m: must be >= 1");
        lattice_ok = false;
    }
    size_t sites = lattice_ok ? lattice.num_sites() : 0;
    if (lattice_ok && sites > 64) {
        v.push_back("lattice: at most 64 sites fit an outcome word");
    }
    if (beta && lattice_ok && beta->size() != sites) {
        v.push_back("beta: has " + std::to_string(beta->size()) + " entries, lattice has " + std::to_string(sites) + " sites");
    }
    for (const auto &e : noise.violations()) {
        v.push_back(e);
    }
    if (shots < 1) {
        v.push_back("shots: must be >= 1");
    }
    if (K < 1) {
        v.push_back("K: must be >= 1");
    }
    if (M < 1) {
        v.push_back("M: must be >= 1");
    }
    if (threads < 1 || threads > 1024) {
        v.push_back("threads: must lie in [1, 1024]");
    }
    if (!kPrepModes.contains(prep)) {
        v.push_back("prep: unknown preparation mode '" + prep + "'");
    }
    if (lattice_ok && register_size != 0 && register_size < lattice.n + 1) {
        v.push_back("register_size: must be >= n + 1 = " + std::to_string(lattice.n + 1));
    }
    if (lattice_ok && command == "sample-recycled" && resolved_register_size() > kMaxDenseQubits) {
        v.push_back("register_size: at most " + std::to_string(kMaxDenseQubits) + " live qubits can be simulated");
    }
    if (lattice_ok && command == "sample-recycled" && !noise.is_none() && noise.is_pauli() && noise.scope != NoiseScope::GateQubits) {
        v.push_back("noise.scope: recycled sampling supports gate-qubit Pauli noise only");
    }
    bool dense = command != "sample-recycled" && command != "threshold" && command != "ideal-xeb" && command != "dalzell";
    if (lattice_ok && dense && sites > kMaxDenseQubits) {
        v.push_back("lattice: " + std::to_string(sites) + " sites exceed the dense simulation cap of " + std::to_string(kMaxDenseQubits));
    }
    if (lattice_ok && dense && is_density_mode(prep) && sites > kMaxDensityQubits) {
        v.push_back("prep: density-matrix modes are limited to " + std::to_string(kMaxDensityQubits) + " sites");
    }
    if (bootstrap < 100) {
        v.push_back("bootstrap: must be >= 100");
    }
    if (K_mc < 1) {
        v.push_back("K_mc: must be >= 1");
    }
    if (!(e1 >= 0 && e1 < 0.5)) {
        v.push_back("e1: must lie in [0, 0.5)");
    }
    for (double s : sigmas) {
        if (!(s >= 0) || !std::isfinite(s)) {
            v.push_back("sigmas: entries must be finite and >= 0");
            break;
        }
    }
    for (size_t m : m_values) {
        if (m < 1 || (lattice_ok && lattice.n * m > kMaxDenseQubits)) {
            v.push_back("m_values: entries must be >= 1 with n*m <= " + std::to_string(kMaxDenseQubits));
            break;
        }
    }
    if (command == "dalzell" && lattice_ok && m_values.empty() && lattice.n * std::max<size_t>(lattice.m, 2) > kMaxDenseQubits) {
        v.push_back("lattice: " + std::to_string(lattice.n * lattice.m) + " sites exceed the dense simulation cap");
    }
    if (!(nu > 0) || !(gamma_ac > 0) || !(rel_err > 0) || !(nu < gamma_ac)) {
        v.push_back("threshold: need 0 < nu < gamma_ac and rel_err > 0");
    }
    return v;
}

void RunConfig::validate() const {
    auto v = violations();
    if (!v.empty()) {
        throw ConfigError(std::move(v));
    }
}

void to_json(nlohmann::json &j, const RunConfig &c) {
    j = nlohmann::json::object();
    j["command"] = c.command;
    j["lattice"] = {{"n", c.lattice.n}, {"m", c.lattice.m}};
    if (c.beta) {
        j["beta"] = *c.beta;
    }
    j["noise"] = c.noise;
    j["shots"] = c.shots;
    j["K"] = c.K;
    j["M"] = c.M;
    j["register_size"] = c.register_size;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["prep"] = c.prep;
    j["out"] = c.out;
    j["csv"] = c.csv;
    j["samples"] = c.samples;
    j["bootstrap"] = c.bootstrap;
    j["K_mc"] = c.K_mc;
    j["cache_dir"] = c.cache_dir;
    j["e1"] = c.e1;
    j["sigmas"] = c.sigmas;
    j["m_values"] = c.m_values;
    j["nu"] = c.nu;
    j["gamma_ac"] = c.gamma_ac;
    j["rel_err"] = c.rel_err;
}

void from_json(const nlohmann::json &j, RunConfig &c) {
    std::vector<std::string> errors;
    if (!j.is_object()) {
        throw ConfigError({"config: must be a JSON object"});
    }
    auto field = [&](const char *key, auto &target) {
        if (!j.contains(key)) {
            return;
        }
        try {
            j.at(key).get_to(target);
        } catch (const std::exception &e) {
            errors.push_back(std::string(key) + ": " + e.what());
        }
    };
    static const std::set<std::string> known = {
        "command", "lattice", "beta", "noise", "shots", "K", "M", "register_size", "seed", "threads", "prep", "out",
        "csv", "samples", "bootstrap", "K_mc", "cache_dir", "e1", "sigmas", "m_values", "nu", "gamma_ac", "rel_err"};
    for (const auto &item : j.items()) {
        if (!known.contains(item.key())) {
            errors.push_back(item.key() + ": unknown field");
        }
    }
    field("command", c.command);
    if (j.contains("lattice")) {
        const auto &l = j.at("lattice");
        if (!l.is_object() || !l.contains("n") || !l.contains("m")) {
            errors.push_back("lattice: expected {\"n\": ..., \"m\": ...}");
        } else {
            try {
                c.lattice.n = l.at("n").get<size_t>();
                c.lattice.m = l.at("m").get<size_t>();
            } catch (const std::exception &e) {
                errors.push_back(std::string("lattice: ") + e.what());
            }
        }
    }
    if (j.contains("beta") && !j.at("beta").is_null()) {
        try {
            c.beta = j.at("beta").get<AngleGrid>();
        } catch (const std::exception &e) {
            errors.push_back(std::string("beta: ") + e.what());
        }
    }
    field("noise", c.noise);
    field("shots", c.shots);
    field("K", c.K);
    field("M", c.M);
    field("register_size", c.register_size);
    field("seed", c.seed);
    field("threads", c.threads);
    field("prep", c.prep);
    field("out", c.out);
    field("csv", c.csv);
    field("samples", c.samples);
    field("bootstrap", c.bootstrap);
    field("K_mc", c.K_mc);
    field("cache_dir", c.cache_dir);
    field("e1", c.e1);
    field("sigmas", c.sigmas);
    field("m_values", c.m_values);
    field("nu", c.nu);
    field("gamma_ac", c.gamma_ac);
    field("rel_err", c.rel_err);
    if (!errors.empty()) {
        for (const auto &v : c.violations()) {
            errors.push_back(v);
        }
        throw ConfigError(std::move(errors));
    }
}

}  // namespace mbqc
