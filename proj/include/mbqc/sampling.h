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

#ifndef MBQC_SAMPLING_H
#define MBQC_SAMPLING_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mbqc/lattice.h"
#include "mbqc/noise.h"
#include "mbqc/preparation.h"

namespace mbqc {

/// Hadamard-basis outcomes of one prepared cluster state. Outcome word bit k is site k.
struct SampleBatch {
    LatticeSpec lattice;
    AngleGrid beta;
    NoiseSpec noise;
    uint64_t seed = 0;
    size_t register_size = 0;  // 0 for full-lattice sampling
    std::vector<uint64_t> outcomes;

    size_t shots() const {
        return outcomes.size();
    }
    /// Binary numeral of the outcome: the last character is site 0.
    std::string outcome_string(size_t shot) const;
    nlohmann::json header_json() const;
    bool operator==(const SampleBatch &) const = default;
};

std::string outcome_to_string(uint64_t outcome, size_t num_sites);
uint64_t outcome_from_string(std::string_view text, size_t num_sites);

/// Shots per RNG stream: block b of a run with master seed s draws from make_rng(s, tag, b), so
/// results do not depend on the number of worker threads.
size_t shot_block_size(const NoiseSpec &noise);

struct SamplingOptions {
    size_t threads = 1;
    PrepMode mode = PrepMode::Frame;
};

/// Draws shots from a preparation using per-block streams derived from seed.
std::vector<uint64_t> sample_preparation(const Preparation &prep, uint64_t shots, uint64_t seed, size_t threads, size_t block);

SampleBatch sample_full(
    const LatticeSpec &lattice, const AngleGrid &beta, uint64_t shots, const NoiseSpec &noise, uint64_t seed,
    const SamplingOptions &options = {});

/// The operations of the site-by-site streaming construction.
struct StreamStep {
    enum class Type { Add, Entangle, Measure };
    Type type;
    size_t site;
    size_t other = 0;  // earlier endpoint of an Entangle step
};

/// Sites are added in index order. Each new site is entangled with its already-present
/// neighbors, and every site whose neighbors are all present is measured right away, so at most
/// n + 1 qubits are ever live. Throws if R < n + 1.
std::vector<StreamStep> streaming_schedule(const LatticeSpec &lattice, size_t register_size);

struct RecyclingStats {
    size_t peak_live_qubits = 0;
    uint64_t qubit_reuses = 0;
    /// Physical register slot used by each site in the first shot (oldest freed slot first).
    std::vector<size_t> slot_of_site;
};

/// Streaming sampler: only the live window of the lattice is simulated; measured qubits are
/// projected out and their register slots reused. Pauli noise (gate-qubit scope) is applied as
/// trajectories after each CZ and optionally after each preparation; Gaussian Z noise is applied
/// as angle offsets at preparation.
SampleBatch sample_recycled(
    const LatticeSpec &lattice, const AngleGrid &beta, size_t register_size, uint64_t shots, const NoiseSpec &noise,
    uint64_t seed, const SamplingOptions &options = {}, RecyclingStats *stats = nullptr);

/// Exact output distribution of the noiseless streaming process, by enumerating every
/// measurement branch. Limited to 12 sites.
std::vector<double> exact_streaming_distribution(const LatticeSpec &lattice, const AngleGrid &beta, size_t register_size);

}  // namespace mbqc

#endif
