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

#ifndef MBQC_XEB_H
#define MBQC_XEB_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "mbqc/circuit.h"
#include "mbqc/estimate.h"
#include "mbqc/lattice.h"
#include "mbqc/preparation.h"

namespace mbqc {

enum class XebVariant { Linear, Log };
enum class XebScope { Physical, Logical };

std::string xeb_variant_name(XebVariant v);
std::string xeb_scope_name(XebScope s);

/// Ideal probabilities below this are treated as exact zeros.
inline constexpr double kZeroProbability = 1e-20;

inline constexpr double kEulerGamma = 0.57721566490153286;

/// (2^N / shots) sum_j P(x_j) - 1, standard error from the spread of 2^N P(x_j).
Estimate linear_xeb(std::span<const uint64_t> samples, const std::vector<double> &exact);

/// -(1/shots) sum_j log P(x_j). Throws std::domain_error if a sample has zero ideal probability.
Estimate log_xeb(std::span<const uint64_t> samples, const std::vector<double> &exact);

/// P(x_f | x_b) = 2^{n(m-1)} P(x_b, x_f) over the final-column outcomes x_f. The bulk marginal must
/// be uniform to 1e-10, which holds for every ideal cluster state.
std::vector<double> logical_conditional(const LatticeSpec &lattice, uint64_t x_b, const std::vector<double> &full);

/// The depth-m circuit on n qubits induced by bulk outcomes x_b: H on every qubit, then for each
/// column Z(beta) rotations, Z on rows whose bulk outcome is 1 (all but the last column), CZ
/// between vertical neighbors and H on every qubit. Its computational-basis output distribution
/// equals logical_conditional.
Circuit extract_logical_circuit(const LatticeSpec &lattice, const AngleGrid &beta, uint64_t x_b);

/// Samples of one circuit with the ideal probability of each sample.
struct XebRecord {
    AngleGrid beta;
    std::vector<uint64_t> samples;
    std::vector<double> physical_probability;  // P_beta(x_j) from the full lattice state
    std::vector<double> logical_probability;   // P_{beta,x_b}(x_f) from the logical circuit
};

/// Computes ideal probabilities for the samples; the logical ones come from simulating the
/// logical circuit of each distinct x_b.
XebRecord make_xeb_record(const LatticeSpec &lattice, const AngleGrid &beta, std::vector<uint64_t> samples, bool with_logical = true);

/// K circuits with fresh random beta (stream make_rng(seed, "xeb", i)), M shots each.
std::vector<XebRecord> collect_xeb_records(
    const PreparationFactory &factory, const LatticeSpec &lattice, uint64_t K, uint64_t M, uint64_t seed, size_t threads = 1,
    bool with_logical = true);

/// Mean-of-means XEB over circuits. Physical scope: the mean of per-circuit averages, with
/// variance (1/KM) E[var_x] + (1/K) var_beta[f] where var_beta is estimated net of shot noise.
/// Logical scope: samples are grouped by (beta, x_b); each circuit contributes the mean of its
/// group means, and the variance is that of the per-circuit values.
Estimate average_xeb(const std::vector<XebRecord> &records, const LatticeSpec &lattice, XebVariant variant, XebScope scope);

/// Monte Carlo ideal XEB constants of n x m cluster sampling over random beta.
struct IdealXebValues {
    size_t n = 0;
    size_t m = 0;
    uint64_t K_mc = 0;
    uint64_t seed = 0;
    Estimate linear_self;           // E_beta[2^{nm} sum P^2 - 1]; physical and logical agree
    Estimate log_self_physical;     // E_beta[-sum P log P]
    Estimate log_self_logical;      // E_beta,x_b[-sum P~ log P~]
    Estimate log_uniform_physical;  // E_beta[-2^{-nm} sum log P] over full-support circuits
    Estimate log_uniform_logical;   // E_beta,x_b[-2^{-n} sum log P~] over full-support logical circuits
    uint64_t zero_support_physical = 0;  // circuits excluded from log_uniform_physical
    uint64_t zero_support_logical = 0;   // (beta, x_b) pairs excluded from log_uniform_logical
    uint64_t logical_pairs = 0;

    double linear_asymptote() const;       // 2 / (1 + 2^{-n}) - 1
    double log_self_asymptote() const;     // log 2^{nm} - 1 + gamma_E
    double log_uniform_asymptote() const;  // log 2^{nm} + gamma_E

    Estimate self(XebVariant variant, XebScope scope) const;
    Estimate uniform(XebVariant variant, XebScope scope) const;
};

void to_json(nlohmann::json &j, const IdealXebValues &v);
void from_json(const nlohmann::json &j, IdealXebValues &v);

IdealXebValues ideal_xeb_values(size_t n, size_t m, uint64_t K_mc, uint64_t seed, size_t threads = 1);

/// Reads the values from cache_dir if present, otherwise computes and stores them. Entries are
/// keyed by (n, m, K_mc, seed).
IdealXebValues cached_ideal_xeb_values(
    const std::string &cache_dir, size_t n, size_t m, uint64_t K_mc, uint64_t seed, size_t threads = 1);

struct XebFidelity {
    Estimate epsilon;
    Estimate fidelity;
};

/// Linear: eps = f / f_self. Log: eps = (f - f_uniform) / (f_self - f_uniform).
/// Fidelity eps + (1 - eps) / D with D = 2^{nm} (physical) or 2^n (logical).
XebFidelity fidelity_from_xeb(
    const Estimate &measured, const IdealXebValues &ideal, XebVariant variant, XebScope scope, const LatticeSpec &lattice);

}  // namespace mbqc

#endif
