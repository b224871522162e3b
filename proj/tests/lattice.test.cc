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

#include <numbers>
#include <set>

#include "mbqc/circuit.h"
#include "mbqc/lattice.h"
#include "mbqc/state_vector.h"
#include "oracle.h"

using namespace mbqc;
using oracle::cplx;
using oracle::Dense;

namespace {

std::vector<std::pair<size_t, size_t>> small_shapes() {
    std::vector<std::pair<size_t, size_t>> s;
    for (size_t n = 1; n <= 3; n++)
        for (size_t m = 1; m <= 3; m++) s.emplace_back(n, m);
    return s;
}

Dense dense_of(const StabilizerElement &op) {
    size_t n = op.num_sites();
    Dense out = Dense::identity(1);
    for (size_t k = 0; k < n; k++) {
        out = oracle::kron_low(out, oracle::site_factor(op.sites[k].kind, op.sites[k].beta));
    }
    return out * cplx(op.sign);
}

}  // namespace

TEST(Lattice, ColumnMajorIndexing) {
    LatticeSpec L(3, 4);
    EXPECT_EQ(L.site(0, 0), 0u);
    EXPECT_EQ(L.site(2, 0), 2u);
    EXPECT_EQ(L.site(0, 1), 3u);
    EXPECT_EQ(L.site(1, 3), 10u);
    for (size_t s = 0; s < L.num_sites(); s++) {
        EXPECT_EQ(L.site(L.row_of(s), L.col_of(s)), s);
    }
    EXPECT_EQ(L.num_bulk_sites(), 9u);
    EXPECT_THROW(LatticeSpec(0, 3), std::invalid_argument);
}

TEST(Lattice, EdgesMatchGridAdjacency) {
    for (auto [n, m] : std::vector<std::pair<size_t, size_t>>{{1, 1}, {1, 5}, {4, 1}, {2, 3}, {3, 3}, {4, 5}}) {
        LatticeSpec L(n, m);
        auto edges = L.edges();
        EXPECT_EQ(edges.size(), n * (m - 1) + m * (n - 1));
        EXPECT_EQ(L.num_edges(), edges.size());
        std::set<std::pair<size_t, size_t>> expected;
        for (size_t r = 0; r < n; r++)
            for (size_t c = 0; c < m; c++) {
                if (r + 1 < n) expected.insert({L.site(r, c), L.site(r + 1, c)});
                if (c + 1 < m) expected.insert({L.site(r, c), L.site(r, c + 1)});
            }
        std::set<std::pair<size_t, size_t>> got, got_rm;
        for (auto e : edges) {
            EXPECT_LT(e.a, e.b);
            got.insert({e.a, e.b});
        }
        for (auto e : L.edges_row_major()) got_rm.insert({e.a, e.b});
        EXPECT_EQ(got, expected);
        EXPECT_EQ(got_rm, expected);
        for (size_t i = 1; i < edges.size(); i++) {
            EXPECT_TRUE(edges[i - 1].b < edges[i].b || (edges[i - 1].b == edges[i].b && edges[i - 1].a < edges[i].a));
        }
        size_t degree_sum = 0;
        for (size_t s = 0; s < L.num_sites(); s++) degree_sum += L.degree(s);
        EXPECT_EQ(degree_sum, 2 * edges.size());
    }
}

TEST(Lattice, RowMajorOrderWalksRowsTopDown) {
    LatticeSpec L(2, 3);
    auto e = L.edges_row_major();
    ASSERT_FALSE(e.empty());
    EXPECT_EQ(L.row_of(e.front().a), 0u);
    for (size_t i = 1; i < e.size(); i++) {
        EXPECT_LE(L.row_of(e[i - 1].a), L.row_of(e[i].a));
    }
}

TEST(AngleGrid, ValidatesAndSerializes) {
    EXPECT_THROW(AngleGrid({0, 8}), std::invalid_argument);
    AngleGrid g({0, 1, 7, 4});
    EXPECT_DOUBLE_EQ(g.angle(2), 7 * std::numbers::pi / 4);
    nlohmann::json j = g;
    EXPECT_EQ(j.dump(), "[0,1,7,4]");
    EXPECT_EQ(j.get<AngleGrid>(), g);
    EXPECT_THROW(nlohmann::json::parse("[0,9]").get<AngleGrid>(), std::invalid_argument);
    Rng rng = make_rng(1, "t", 0);
    auto r = AngleGrid::random(1000, rng);
    std::vector<int> counts(8);
    for (auto k : r.values()) counts[k]++;
    for (int c : counts) EXPECT_GT(c, 80);
}

TEST(Stabilizer, ClusterStateMatchesDenseConstruction) {
    Rng rng = make_rng(2, "t", 0);
    for (auto [n, m] : small_shapes()) {
        LatticeSpec L(n, m);
        auto beta = AngleGrid::random(L.num_sites(), rng);
        auto angles = beta.angles();
        auto want = oracle::cluster_state(L, angles);
        EXPECT_LT(oracle::max_diff(cluster_state(L, beta).amplitudes(), want), 1e-12) << L.str();
        for (bool rot_first : {true, false}) {
            auto via_circuit = apply_circuit(StateVector(L.num_sites()), cluster_circuit(L, beta, rot_first));
            EXPECT_LT(oracle::max_diff(via_circuit.amplitudes(), want), 1e-12);
        }
    }
}

TEST(Stabilizer, GeneratorsAreHermitianInvolutionsThatStabilize) {
    Rng rng = make_rng(3, "t", 0);
    for (auto [n, m] : small_shapes()) {
        LatticeSpec L(n, m);
        auto beta = AngleGrid::random(L.num_sites(), rng);
        auto psi = oracle::cluster_state(L, beta.angles());
        size_t D = size_t{1} << L.num_sites();
        for (size_t k = 0; k < L.num_sites(); k++) {
            auto g = stabilizer_generator(L, beta, k);
            Dense G = dense_of(g);
            EXPECT_LT(G.max_diff(G.adjoint()), 1e-14);
            EXPECT_LT((G * G).max_diff(Dense::identity(D)), 1e-13);
            EXPECT_NEAR(std::real(oracle::expectation(G, psi)), 1, 1e-12);
            EXPECT_EQ(g.flip_mask(), uint64_t{1} << k);
            // Library dense matrix agrees with the factor-by-factor construction.
            auto lib = g.dense_matrix();
            double d = 0;
            for (size_t i = 0; i < lib.size(); i++) d = std::max(d, std::abs(lib[i] - G.a[i]));
            EXPECT_LT(d, 1e-14);
        }
    }
}

TEST(Stabilizer, AllGroupElementsOfTwoByTwoStabilize) {
    LatticeSpec L(2, 2);
    Rng rng = make_rng(4, "t", 0);
    for (int trial = 0; trial < 5; trial++) {
        auto beta = AngleGrid::random(4, rng);
        auto psi = oracle::cluster_state(L, beta.angles());
        for (int mask = 0; mask < 16; mask++) {
            std::vector<uint8_t> sel(4);
            for (int k = 0; k < 4; k++) sel[k] = (mask >> k) & 1;
            auto g = group_element(L, beta, sel);
            // The element equals the ordered product of the selected generators.
            Dense prod = Dense::identity(16);
            for (int k = 0; k < 4; k++)
                if (sel[k]) prod = prod * dense_of(stabilizer_generator(L, beta, k));
            EXPECT_LT(dense_of(g).max_diff(prod), 1e-13) << mask;
            EXPECT_NEAR(std::real(oracle::expectation(dense_of(g), psi)), 1, 1e-12);
            EXPECT_NEAR(expectation_product_operator(cluster_state(L, beta), g), 1, 1e-12);
        }
    }
}

TEST(Stabilizer, RandomGroupElementsAreUniformOverSelectors) {
    LatticeSpec L(2, 2);
    auto beta = AngleGrid::zeros(4);
    Rng rng = make_rng(5, "t", 0);
    std::vector<int> counts(16);
    for (int i = 0; i < 16000; i++) {
        auto g = random_group_element(L, beta, rng);
        int idx = 0;
        for (int k = 0; k < 4; k++) idx |= g.selector[k] << k;
        counts[idx]++;
    }
    double chi2 = 0;
    for (int c : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
    EXPECT_LT(chi2, 37.7);  // 15 dof, p = 0.001
}
