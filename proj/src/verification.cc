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

#include "mbqc/verification.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "mbqc/parallel.h"
#include "mbqc/tolerances.h"

namespace mbqc {

double estimator_variance(uint64_t K, uint64_t M, double mean_p, double var_p) {
    if (K < 1 || M < 1) {
        throw std::domain_error("K and M must be at least 1");
    }
    if (!(mean_p >= 0 && mean_p <= 1)) {
        throw std::domain_error("mean_p must lie in [0, 1]");
    }
    if (!(var_p >= 0)) {
        throw std::domain_error("var_p must be >= 0");
    }
    double k = double(K);
    double m = double(M);
    return 4 / (k * m) * mean_p * (1 - mean_p) + 4 / k * (1 - 1 / m) * var_p;
}

Estimate estimate_fidelity(const DfeData &data, const std::string &method) {
    uint64_t K = data.plus_counts.size();
    if (K == 0 || data.M == 0) {
        throw std::invalid_argument("fidelity estimate needs K >= 1 and M >= 1");
    }
    double m = double(data.M);
    std::vector<double> p(K);
    double binom = 0;
    for (size_t i = 0; i < K; i++) {
        p[i] = data.plus_counts[i] / m;
        binom += p[i] * (1 - p[i]);
    }
    MeanVar mv = mean_var(p.data(), p.size());
    double var_p = 0;
    if (data.M > 1) {
        var_p = std::max(0.0, mv.var - binom / double(K) / (m - 1));
    }
    Estimate e;
    e.method = method;
    e.value = 2 * mv.mean - 1;
    e.std_error = std::sqrt(estimator_variance(K, data.M, std::clamp(mv.mean, 0.0, 1.0), var_p));
    e.K = K;
    e.M = data.M;
    return e;
}

DfeData collect_dfe_single(
    const Preparation &prep, const LatticeSpec &lattice, const AngleGrid &beta, uint64_t K, uint64_t M, uint64_t seed,
    size_t threads) {
    if (K < 1 || M < 1) {
        throw std::invalid_argument("K and M must be at least 1");
    }
    DfeData d;
    d.M = M;
    d.plus_counts.resize(K);
    parallel_for(K, threads, [&](size_t i) {
        Rng rng = make_rng(seed, "dfe", i);
        auto op = random_group_element(lattice, beta, rng);
        d.plus_counts[i] = static_cast<uint32_t>(prep.measure_plus_count(op, M, rng));
    });
    return d;
}

DfeData collect_dfe_average(
    const PreparationFactory &factory, const LatticeSpec &lattice, uint64_t K, uint64_t M, uint64_t seed, size_t threads) {
    if (K < 1 || M < 1) {
        throw std::invalid_argument("K and M must be at least 1");
    }
    DfeData d;
    d.M = M;
    d.plus_counts.resize(K);
    parallel_for(K, threads, [&](size_t i) {
        Rng rng = make_rng(seed, "dfe-avg", i);
        AngleGrid beta = AngleGrid::random(lattice.num_sites(), rng);
        auto prep = factory(beta);
        auto op = random_group_element(lattice, beta, rng);
        d.plus_counts[i] = static_cast<uint32_t>(prep->measure_plus_count(op, M, rng));
    });
    return d;
}

Estimate dfe_single(
    const Preparation &prep, const LatticeSpec &lattice, const AngleGrid &beta, uint64_t K, uint64_t M, uint64_t seed,
    size_t threads) {
    return estimate_fidelity(collect_dfe_single(prep, lattice, beta, K, M, seed, threads), "dfe");
}

Estimate dfe_average(
    const PreparationFactory &factory, const LatticeSpec &lattice, uint64_t K, uint64_t M, uint64_t seed, size_t threads) {
    return estimate_fidelity(collect_dfe_average(factory, lattice, K, M, seed, threads), "dfe-avg");
}

DfeData subsample_single_shot(const DfeData &data, Rng &rng) {
    DfeData out;
    out.M = 1;
    out.plus_counts.reserve(data.plus_counts.size());
    for (auto c : data.plus_counts) {
        out.plus_counts.push_back(uniform_below(rng, data.M) < c ? 1 : 0);
    }
    return out;
}

double witness_from_expectations(std::span<const double> s) {
    double w = 1;
    for (double v : s) {
        w -= (1 - v) / 2;
    }
    return w;
}

Estimate witness(const Preparation &prep, const LatticeSpec &lattice, const AngleGrid &beta, uint64_t M, uint64_t seed) {
    if (M < 1) {
        throw std::invalid_argument("witness needs at least one shot per generator");
    }
    size_t n = lattice.num_sites();
    std::vector<double> s(n);
    double var = 0;
    for (size_t k = 0; k < n; k++) {
        Rng rng = make_rng(seed, "witness", k);
        auto op = stabilizer_generator(lattice, beta, k);
        double plus = double(prep.measure_plus_count(op, M, rng));
        s[k] = (2 * plus - double(M)) / double(M);
        var += (1 - s[k] * s[k]) / double(M);
    }
    Estimate e;
    e.method = "witness";
    e.value = witness_from_expectations(s);
    e.std_error = std::sqrt(var) / 2;
    e.K = n;
    e.M = M;
    return e;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("distributions have different dimensions");
    }
    double t = 0;
    for (size_t i = 0; i < p.size(); i++) {
        t += std::abs(p[i] - q[i]);
    }
    return t / 2;
}

std::vector<double> empirical_distribution(std::span<const uint64_t> outcomes, size_t num_sites) {
    if (num_sites > kMaxTvdQubits) {
        throw std::invalid_argument("histograms are limited to 2^20 outcomes");
    }
    std::vector<double> h(size_t{1} << num_sites, 0.0);
    for (auto x : outcomes) {
        if (x >= h.size()) {
            throw std::invalid_argument("outcome outside the histogram range");
        }
        h[x] += 1;
    }
    for (auto &v : h) {
        v /= double(outcomes.size());
    }
    return h;
}

namespace {

/// TVD between a sparse histogram (counts over `support`) and a reference, where the
/// reference's mass outside the support is `outside`.
double sparse_tvd(
    const std::vector<uint64_t> &counts, double shots, const std::vector<double> &reference, double outside) {
    double t = outside;
    for (size_t i = 0; i < counts.size(); i++) {
        t += std::abs(counts[i] / shots - reference[i]);
    }
    return t / 2;
}

}  // namespace

double bootstrap_tvd_error(const SampleBatch &samples, size_t iterations, Rng &rng, const std::vector<double> *exact) {
    if (iterations < 100) {
        throw std::invalid_argument("bootstrap needs at least 100 iterations");
    }
    if (samples.shots() == 0) {
        throw std::invalid_argument("bootstrap of an empty sample set");
    }
    std::map<uint64_t, uint64_t> hist;
    for (auto x : samples.outcomes) {
        hist[x]++;
    }
    std::vector<uint64_t> support;
    std::vector<double> observed;
    double shots = double(samples.shots());
    for (auto [x, c] : hist) {
        support.push_back(x);
        observed.push_back(double(c) / shots);
    }
    std::vector<double> reference = observed;
    double outside = 0;
    if (exact) {
        double inside = 0;
        for (size_t i = 0; i < support.size(); i++) {
            if (support[i] >= exact->size()) {
                throw std::invalid_argument("outcome outside the exact distribution");
            }
            reference[i] = (*exact)[support[i]];
            inside += reference[i];
        }
        outside = std::max(0.0, 1 - inside);
    }
    std::vector<double> values(iterations);
    std::vector<uint64_t> counts(support.size());
    for (size_t it = 0; it < iterations; it++) {
        // Multinomial draw as a chain of conditional binomials.
        uint64_t left = samples.shots();
        double mass = 1;
        for (size_t i = 0; i < support.size(); i++) {
            if (i + 1 == support.size() || left == 0) {
                counts[i] = left;
                left = 0;
                continue;
            }
            double p = std::clamp(observed[i] / mass, 0.0, 1.0);
            counts[i] = binomial(rng, left, p);
            left -= counts[i];
            mass -= observed[i];
        }
        values[it] = sparse_tvd(counts, shots, reference, outside);
    }
    return std::sqrt(mean_var(values.data(), values.size()).var);
}

Estimate empirical_tvd(const SampleBatch &samples, const std::vector<double> &exact, size_t iterations, Rng &rng) {
    size_t n = samples.lattice.num_sites();
    if (n > kMaxTvdQubits) {
        throw std::invalid_argument("TVD estimation is refused beyond 2^20 outcomes");
    }
    if (exact.size() != (size_t{1} << n)) {
        throw std::invalid_argument("exact distribution dimension does not match the lattice");
    }
    if (samples.shots() == 0) {
        throw std::invalid_argument("TVD of an empty sample set");
    }
    auto q = empirical_distribution(samples.outcomes, n);
    Estimate e;
    e.method = "tvd";
    e.value = total_variation(q, exact);
    e.std_error = bootstrap_tvd_error(samples, iterations, rng, &exact);
    e.K = 1;
    e.M = samples.shots();
    return e;
}

MeasurementErrorModel::MeasurementErrorModel(double e1, size_t n) : e1(e1), n(n) {
    if (!(e1 >= 0 && e1 < 1)) {
        throw std::domain_error("e1 must lie in [0, 1)");
    }
    if (n < 1) {
        throw std::domain_error("qubit count must be positive");
    }
}

double MeasurementErrorModel::e_m() const {
    return 1 - std::pow(1 - e1, double(n));
}

MeasurementErrorBounds measurement_error_bounds(double f_hat, const MeasurementErrorModel &model) {
    double em = model.e_m();
    if (!(em < 1)) {
        throw std::domain_error("device measurement error must be below 1");
    }
    MeasurementErrorBounds b;
    b.e_m = em;
    b.lower = (f_hat - em) / (1 - em);
    b.upper = (f_hat + em) / (1 - em);
    if (em != 0.5) {
        b.benign_corrected = f_hat / (1 - 2 * em);
    }
    return b;
}

double benign_correction(double f_hat, const MeasurementErrorModel &model) {
    double em = model.e_m();
    if (em == 0.5) {
        throw std::domain_error("benign correction is undefined at e_M = 1/2");
    }
    return f_hat / (1 - 2 * em);
}

ThresholdResult stockmeyer_threshold(double nu, double gamma_ac, double rel_err) {
    if (!(nu > 0 && nu < gamma_ac)) {
        throw std::domain_error("threshold needs 0 < nu < gamma_ac");
    }
    if (!(rel_err > 0)) {
        throw std::domain_error("relative error must be positive");
    }
    double tvd = rel_err * (1 - nu / gamma_ac);
    return {tvd, tvd * tvd};
}

}  // namespace mbqc
