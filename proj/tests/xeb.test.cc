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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "mbqc/lattice.h"
#include "mbqc/noise.h"
#include "mbqc/preparation.h"
#include "mbqc/state_vector.h"
#include "mbqc/xeb.h"

using namespace mbqc;

namespace {

// P(x_f | x_b) straight from the lattice distribution, by marginalizing.
std::vector<double> brute_conditional(const LatticeSpec &L, uint64_t xb, const std::vector<double> &full) {
    size_t bulk = L.num_bulk_sites();
    std::vector<double> out(size_t{1} << L.n);
    double marg = 0;
    for (uint64_t x = 0; x < full.size(); x++) {
        if ((x & ((uint64_t{1} << bulk) - 1)) != xb) continue;
        out[x >> bulk] += full[x];
        marg += full[x];
    }
    for (auto &v : out) v /= marg;
    return out;
}

double entropy(const std::vector<double> &p) {
    double s = 0;
    for (double v : p)
        if (v > 0) s -= v * std::log(v);
    return s;
}

double collision(const std::vector<double> &p) {
    double s = 0;
    for (double v : p) s += v * v;
    return double(p.size()) * s - 1;
}

}  // namespace

TEST(XebEstimators, LinearAndLogByHand) {
    std::vector<double> exact = {0.5, 0.25, 0.25, 0};
    std::vector<uint64_t> s = {0, 0, 1};
    Estimate lin = linear_xeb(s, exact);
    EXPECT_DOUBLE_EQ(lin.value, 2.0 / 3);
    EXPECT_NEAR(lin.std_error, 1.0 / 3, 1e-15);
    Estimate lg = log_xeb(s, exact);
    EXPECT_NEAR(lg.value, -(2 * std::log(0.5) + std::log(0.25)) / 3, 1e-15);
    std::vector<uint64_t> bad = {0, 3};
    EXPECT_THROW(log_xeb(bad, exact), std::domain_error);
    EXPECT_DOUBLE_EQ(linear_xeb(bad, exact).value, 0);
    std::vector<uint64_t> out_of_range = {4};
    EXPECT_THROW(linear_xeb(out_of_range, exact), std::invalid_argument);
}

TEST(LogicalCircuit, ConditionalMatchesMarginalizationAndCircuit) {
    Rng rng = make_rng(1, "t", 0);
    for (auto [n, m] : std::vector<std::pair<size_t, size_t>>{{1, 3}, {2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        LatticeSpec L(n, m);
        for (int rep = 0; rep < 3; rep++) {
            auto beta = AngleGrid::random(L.num_sites(), rng);
            auto full = hadamard_basis_distribution(cluster_state(L, beta));
            for (uint64_t xb = 0; xb < (uint64_t{1} << L.num_bulk_sites()); xb++) {
                auto want = brute_conditional(L, xb, full);
                auto got = logical_conditional(L, xb, full);
                auto circ = apply_circuit(StateVector(n), extract_logical_circuit(L, beta, xb)).probabilities();
                for (size_t i = 0; i < want.size(); i++) {
                    EXPECT_NEAR(got[i], want[i], 1e-12);
                    EXPECT_NEAR(circ[i], want[i], 1e-12) << n << "x" << m << " xb=" << xb;
                }
            }
        }
    }
}

TEST(LogicalCircuit, RejectsNonUniformBulk) {
    LatticeSpec L(1, 2);
    std::vector<double> skew = {0.7, 0.1, 0.1, 0.1};
    EXPECT_THROW(logical_conditional(L, 0, skew), std::invalid_argument);
    EXPECT_THROW(logical_conditional(L, 2, {0.25, 0.25, 0.25, 0.25}), std::invalid_argument);
}

TEST(IdealXeb, PhysicalAndLogicalIdentities) {
    Rng rng = make_rng(2, "t", 0);
    for (auto [n, m] : std::vector<std::pair<size_t, size_t>>{{2, 2}, {2, 3}, {3, 3}}) {
        LatticeSpec L(n, m);
        auto beta = AngleGrid::random(L.num_sites(), rng);
        auto full = hadamard_basis_distribution(cluster_state(L, beta));
        size_t bulk = L.num_bulk_sites();
        double ent = 0, lin = 0;
        for (uint64_t xb = 0; xb < (uint64_t{1} << bulk); xb++) {
            auto p = brute_conditional(L, xb, full);
            ent += entropy(p);
            lin += collision(p);
        }
        ent /= double(uint64_t{1} << bulk);
        lin /= double(uint64_t{1} << bulk);
        EXPECT_NEAR(entropy(full), ent + double(bulk) * std::numbers::ln2, 1e-10);
        EXPECT_NEAR(collision(full), lin, 1e-10);
    }
}

TEST(IdealXeb, MonteCarloMatchesFullLatticeAverages) {
    const size_t n = 2, m = 3;
    const uint64_t K = 40, seed = 5;
    LatticeSpec L(n, m);
    auto v = ideal_xeb_values(n, m, K, seed);
    double lin = 0, ent = 0;
    for (uint64_t i = 0; i < K; i++) {
        Rng rng = make_rng(seed, "ideal-xeb", i);
        auto full = hadamard_basis_distribution(cluster_state(L, AngleGrid::random(L.num_sites(), rng)));
        lin += collision(full) / K;
        ent += entropy(full) / K;
    }
    EXPECT_NEAR(v.linear_self.value, lin, 1e-10);
    EXPECT_NEAR(v.log_self_physical.value, ent, 1e-10);
    EXPECT_NEAR(v.log_self_logical.value, ent - double(n * (m - 1)) * std::numbers::ln2, 1e-10);
    EXPECT_EQ(v.logical_pairs, K * 16);
    EXPECT_DOUBLE_EQ(v.linear_asymptote(), 2 / 1.25 - 1);
    EXPECT_DOUBLE_EQ(v.log_self_asymptote(), 6 * std::numbers::ln2 - 1 + kEulerGamma);
    auto again = ideal_xeb_values(n, m, K, seed, 3);
    EXPECT_EQ(again.linear_self.value, v.linear_self.value);
}

TEST(IdealXeb, CacheRoundTrip) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "mbqc_xeb_cache_test";
    fs::remove_all(dir);
    auto a = cached_ideal_xeb_values(dir.string(), 2, 2, 50, 9);
    ASSERT_FALSE(fs::is_empty(dir));
    auto b = cached_ideal_xeb_values(dir.string(), 2, 2, 50, 9);
    EXPECT_EQ(a.linear_self.value, b.linear_self.value);
    EXPECT_EQ(a.log_uniform_logical.std_error, b.log_uniform_logical.std_error);
    EXPECT_EQ(a.zero_support_physical, b.zero_support_physical);
    nlohmann::json j = a;
    EXPECT_EQ(j.get<IdealXebValues>().log_self_physical.value, a.log_self_physical.value);
    fs::remove_all(dir);
}

TEST(XebFidelity, ClosedForm) {
    IdealXebValues ideal;
    ideal.n = 2;
    ideal.m = 2;
    ideal.linear_self.value = 0.6;
    ideal.log_self_physical.value = 3.0;
    ideal.log_uniform_physical.value = 4.0;
    LatticeSpec L(2, 2);
    Estimate meas;
    meas.value = 0.3;
    meas.std_error = 0.01;
    auto lin = fidelity_from_xeb(meas, ideal, XebVariant::Linear, XebScope::Physical, L);
    EXPECT_DOUBLE_EQ(lin.epsilon.value, 0.5);
    EXPECT_DOUBLE_EQ(lin.fidelity.value, 0.5 + 0.5 / 16);
    EXPECT_NEAR(lin.epsilon.std_error, 0.01 / 0.6, 1e-15);
    auto lin_logical = fidelity_from_xeb(meas, ideal, XebVariant::Linear, XebScope::Logical, L);
    EXPECT_DOUBLE_EQ(lin_logical.fidelity.value, 0.5 + 0.5 / 4);
    meas.value = 3.5;
    auto lg = fidelity_from_xeb(meas, ideal, XebVariant::Log, XebScope::Physical, L);
    EXPECT_DOUBLE_EQ(lg.epsilon.value, 0.5);
    ideal.linear_self.value = 0;
    EXPECT_THROW(fidelity_from_xeb(meas, ideal, XebVariant::Linear, XebScope::Physical, L), std::domain_error);
}

TEST(AverageXeb, LogicalScopeAveragesGroupMeans) {
    LatticeSpec L(1, 2);
    AngleGrid beta({1, 2});
    auto rec = make_xeb_record(L, beta, {0b00, 0b10, 0b01});
    auto full = hadamard_basis_distribution(cluster_state(L, beta));
    ASSERT_EQ(rec.physical_probability[1], full[2]);
    auto cond0 = brute_conditional(L, 0, full), cond1 = brute_conditional(L, 1, full);
    double g0 = ((2 * cond0[0] - 1) + (2 * cond0[1] - 1)) / 2;
    double g1 = 2 * cond1[0] - 1;
    Estimate e = average_xeb({rec}, L, XebVariant::Linear, XebScope::Logical);
    EXPECT_NEAR(e.value, (g0 + g1) / 2, 1e-14);
    Estimate p = average_xeb({rec}, L, XebVariant::Linear, XebScope::Physical);
    EXPECT_NEAR(p.value, (4 * (full[0] + full[2] + full[1]) - 3) / 3, 1e-14);
}

TEST(AverageXeb, IdealSamplesReachSelfValueAndUniformSamplesZero) {
    LatticeSpec L(2, 2);
    auto factory = cluster_preparation_factory(L, NoiseSpec::none(), PrepMode::Frame);
    auto recs = collect_xeb_records(factory, L, 400, 40, 3);
    auto ideal = ideal_xeb_values(2, 2, 20000, 4);
    Estimate lin = average_xeb(recs, L, XebVariant::Linear, XebScope::Physical);
    double se = std::hypot(lin.std_error, ideal.linear_self.std_error);
    EXPECT_NEAR(lin.value, ideal.linear_self.value, 4 * se);
    Estimate logl = average_xeb(recs, L, XebVariant::Linear, XebScope::Logical);
    EXPECT_NEAR(logl.value, ideal.linear_self.value, 4 * std::hypot(logl.std_error, ideal.linear_self.std_error));

    std::vector<XebRecord> uniform;
    for (uint64_t i = 0; i < 400; i++) {
        Rng rng = make_rng(6, "u", i);
        auto beta = AngleGrid::random(4, rng);
        std::vector<uint64_t> s;
        for (int j = 0; j < 40; j++) s.push_back(rng() & 15);
        uniform.push_back(make_xeb_record(L, beta, s));
    }
    Estimate u = average_xeb(uniform, L, XebVariant::Linear, XebScope::Physical);
    EXPECT_NEAR(u.value, 0, 4 * u.std_error);
}
