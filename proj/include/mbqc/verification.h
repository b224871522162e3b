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

#ifndef MBQC_VERIFICATION_H
#define MBQC_VERIFICATION_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mbqc/estimate.h"
#include "mbqc/lattice.h"
#include "mbqc/preparation.h"
#include "mbqc/rng.h"
#include "mbqc/sampling.h"

namespace mbqc {

/// Raw direct-fidelity-estimation data: the number of +1 outcomes for each of K measured group
/// elements, each measured M times.
struct DfeData {
    std::vector<uint32_t> plus_counts;
    uint64_t M = 1;
};

/// var[F] = (4/KM) mean_p (1 - mean_p) + (4/K) (1 - 1/M) var_p, where p is the probability of a
/// +1 outcome for a uniformly random group element.
double estimator_variance(uint64_t K, uint64_t M, double mean_p, double var_p);

/// F = (KM)^{-1} sum of +-1 outcomes, with the plug-in variance. var_p is estimated without the
/// binomial shot noise: sample variance of the p_i minus mean(p_i (1 - p_i)) / (M - 1).
Estimate estimate_fidelity(const DfeData &data, const std::string &method = "dfe");

/// K uniformly random group elements of the fixed-beta stabilizer group, each measured M times.
/// Element i uses the stream make_rng(seed, "dfe", i).
DfeData collect_dfe_single(
    const Preparation &prep, const LatticeSpec &lattice, const AngleGrid &beta, uint64_t K, uint64_t M, uint64_t seed,
    size_t threads = 1);

/// K fresh (beta, group element) pairs, each measured M times.
DfeData collect_dfe_average(
    const PreparationFactory &factory, const LatticeSpec &lattice, uint64_t K, uint64_t M, uint64_t seed,
    size_t threads = 1);

Estimate dfe_single(
    const Preparation &prep, const LatticeSpec &lattice, const AngleGrid &beta, uint64_t K, uint64_t M, uint64_t seed,
    size_t threads = 1);

Estimate dfe_average(
    const PreparationFactory &factory, const LatticeSpec &lattice, uint64_t K, uint64_t M, uint64_t seed,
    size_t threads = 1);

/// Keeps one shot per measured element (drawn without replacement from its M outcomes).
DfeData subsample_single_shot(const DfeData &data, Rng &rng);

/// W = 1 - (1/2) sum_i (1 - <S_i>) from generator expectations.
double witness_from_expectations(std::span<const double> generator_expectations);

/// Measures every generator M times; standard error (1/2) sqrt(sum_i (1 - S_i^2) / M).
Estimate witness(
    const Preparation &prep, const LatticeSpec &lattice, const AngleGrid &beta, uint64_t M, uint64_t seed);

/// d_TV = sum |p - q| / 2.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Normalized histogram over 2^N outcomes.
std::vector<double> empirical_distribution(std::span<const uint64_t> outcomes, size_t num_sites);

/// Spread of the TVD under multinomial resampling of the observed outcomes at the same shot
/// count. With `exact`, the TVD of each resample is taken against it; otherwise against the
/// observed distribution.
double bootstrap_tvd_error(
    const SampleBatch &samples, size_t iterations, Rng &rng, const std::vector<double> *exact = nullptr);

/// TVD of the sample histogram to `exact`, with a bootstrap standard error. Refuses beyond
/// 2^20 outcomes.
Estimate empirical_tvd(const SampleBatch &samples, const std::vector<double> &exact, size_t iterations, Rng &rng);

struct MeasurementErrorModel {
    double e1 = 0;
    size_t n = 1;

    MeasurementErrorModel(double e1, size_t n);
    /// 1 - (1 - e1)^n.
    double e_m() const;
};

struct MeasurementErrorBounds {
    double e_m;
    double lower;  // (F - e_M) / (1 - e_M)
    double upper;  // (F + e_M) / (1 - e_M)
    std::optional<double> benign_corrected;  // F / (1 - 2 e_M); empty at e_M = 1/2
};

MeasurementErrorBounds measurement_error_bounds(double f_hat, const MeasurementErrorModel &model);

/// F / (1 - 2 e_M); throws at e_M = 1/2.
double benign_correction(double f_hat, const MeasurementErrorModel &model);

struct ThresholdResult {
    double tvd_threshold;
    double infidelity_threshold;
};

/// tvd = rel_err (1 - nu / gamma_ac), infidelity = tvd^2.
ThresholdResult stockmeyer_threshold(double nu = 1e-3, double gamma_ac = 0.36787944117144233, double rel_err = 0.2928);

}  // namespace mbqc

#endif
