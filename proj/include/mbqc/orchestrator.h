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

#ifndef MBQC_ORCHESTRATOR_H
#define MBQC_ORCHESTRATOR_H

#include <exception>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mbqc/preparation.h"
#include "mbqc/run_config.h"
#include "mbqc/sampling.h"

namespace mbqc {

inline constexpr int kResultSchemaVersion = 1;
inline constexpr int kCsvSchemaVersion = 1;

/// Validates the config, runs its subcommand and writes cfg.out / cfg.csv / cfg.samples when
/// set. Returns the result document. The document does not depend on cfg.threads.
nlohmann::json run(const RunConfig &cfg);

/// {"error": {"type": ..., "message": ..., "violations": [...]}}
nlohmann::json error_json(const std::exception &e);

/// Preparation source for the configured mode and noise.
PreparationFactory make_factory(const LatticeSpec &lattice, const NoiseSpec &noise, const std::string &prep);

/// Exact fidelity of the noisy preparation with the ideal state, where a cheap exact route exists.
std::optional<double> oracle_fidelity(
    const LatticeSpec &lattice, const AngleGrid &beta, const NoiseSpec &noise, const std::string &prep);

/// Exact noisy Hadamard-basis distribution, where available.
std::optional<std::vector<double>> oracle_distribution(
    const LatticeSpec &lattice, const AngleGrid &beta, const NoiseSpec &noise, const std::string &prep);

/// A table whose first column is the schema version.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    void add(std::vector<nlohmann::json> values);
    void write(std::ostream &out) const;
};

/// Writes a JSON-lines batch so that an interrupted earlier write of the same batch is continued
/// rather than rewritten: a complete-line prefix that matches is kept, anything else is replaced.
/// Returns the number of records that were already present.
uint64_t write_samples_resumable(const std::string &path, const SampleBatch &batch);

/// Entry point of the command-line tool. Writes the result (or error) JSON to `out`.
int cli_main(int argc, char **argv, std::ostream &out);

}  // namespace mbqc

#endif
