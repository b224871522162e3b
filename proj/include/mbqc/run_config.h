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

#ifndef MBQC_RUN_CONFIG_H
#define MBQC_RUN_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mbqc/lattice.h"
#include "mbqc/noise.h"

namespace mbqc {

/// Everything a run depends on. Two runs with equal configs produce identical output bytes,
/// whatever the thread count.
struct RunConfig {
    std::string command;
    LatticeSpec lattice{2, 2};
    std::optional<AngleGrid> beta;  // drawn from make_rng(seed, "beta", 0) when absent
    NoiseSpec noise;
    uint64_t shots = 1000;
    uint64_t K = 100;
    uint64_t M = 1;
    size_t register_size = 0;  // 0: n + 1
    uint64_t seed = 1;
    size_t threads = 1;
    /// frame | trajectory | density | compiled-trajectory | compiled-density
    std::string prep = "frame";
    std::string out;      // results JSON
    std::string csv;      // optional table
    std::string samples;  // sample batch (.jsonl or .bin)
    size_t bootstrap = 200;
    uint64_t K_mc = 10000;
    std::string cache_dir;
    double e1 = 0;  // per-qubit measurement error for the DFE bounds
    std::vector<double> sigmas;   // noise-sweep grid; default 11 points over [0, 0.2 pi]
    std::vector<size_t> m_values; // dalzell sweep; default 2..m
    double nu = 1e-3;
    double gamma_ac = 0.36787944117144233;
    double rel_err = 0.2928;

    AngleGrid resolved_beta() const;
    size_t resolved_register_size() const;
    std::vector<double> resolved_sigmas() const;
    std::vector<size_t> resolved_m_values() const;

    /// Every violated field, as "field: reason".
    std::vector<std::string> violations() const;
    void validate() const;
    bool operator==(const RunConfig &) const = default;
};

inline const std::vector<std::string> &known_commands() {
    static const std::vector<std::string> commands = {
        "sample", "sample-recycled", "dfe", "dfe-avg", "witness", "tvd", "xeb",
        "ideal-xeb", "noise-sweep", "dalzell", "threshold", "compile", "oracle-check"};
    return commands;
}

class ConfigError : public std::invalid_argument {
   public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string> &violations() const {
        return violations_;
    }

   private:
    std::vector<std::string> violations_;
};

void to_json(nlohmann::json &j, const RunConfig &cfg);
/// Unknown keys are violations, reported through ConfigError together with any others.
void from_json(const nlohmann::json &j, RunConfig &cfg);

}  // namespace mbqc

#endif
