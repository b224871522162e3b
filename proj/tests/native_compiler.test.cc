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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "mbqc/native_compiler.h"
#include "mbqc/preparation.h"
#include "mbqc/state_vector.h"
#include "oracle.h"

using namespace mbqc;
using std::numbers::pi;

namespace {

// |<x| H^{(x)N} |psi>|^2 by direct summation.
std::vector<double> brute_hadamard(const std::vector<cplx> &psi) {
    size_t d = psi.size();
    std::vector<double> out(d);
    for (size_t x = 0; x < d; x++) {
        cplx a = 0;
        for (size_t y = 0; y < d; y++) a += (std::popcount(x & y) % 2 ? -1.0 : 1.0) * psi[y];
        out[x] = std::norm(a) / double(d);
    }
    return out;
}

std::vector<double> reference(const LatticeSpec &L, const AngleGrid &beta) {
    auto angles = beta.angles();
    return brute_hadamard(oracle::cluster_state(L, angles));
}

}  // namespace

TEST(Compile, UsesOnlyNativeGates) {
    Rng rng = make_rng(1, "t", 0);
    for (auto [n, m] : std::vector<std::pair<size_t, size_t>>{{1, 1}, {1, 4}, {2, 3}, {3, 3}, {4, 2}}) {
        LatticeSpec L(n, m);
        auto beta = AngleGrid::random(L.num_sites(), rng);
        auto prog = compile(L, beta);
        EXPECT_EQ(prog.circuit.count(GateKind::MS), n * (m - 1) + m * (n - 1));
        for (const auto &g : prog.circuit.gates) {
            ASSERT_TRUE(g.kind == GateKind::MS || g.kind == GateKind::RXY);
            if (g.kind == GateKind::RXY) EXPECT_NEAR(std::abs(g.theta), pi / 2, 1e-15);
        }
        EXPECT_EQ(prog.post_flip_mask, (uint64_t{1} << L.num_sites()) - 1);
        EXPECT_NEAR(std::abs(prog.global_phase), 1, 1e-15);
    }
}

TEST(Compile, MsGatesFollowRowMajorEdges) {
    LatticeSpec L(2, 3);
    auto prog = compile(L, AngleGrid::zeros(6));
    std::vector<Edge> got;
    for (const auto &g : prog.circuit.gates)
        if (g.kind == GateKind::MS) got.push_back({g.q0, g.q1});
    EXPECT_EQ(got, L.edges_row_major());
}

TEST(Compile, TwoSiteChainAtZeroAngles) {
    LatticeSpec L(1, 2);
    auto prog = compile(L, AngleGrid::zeros(2));
    // CZ (H (x) H)|00> = (|00> + |01> + |10> - |11>)/2, then Hadamard-basis measurement.
    std::vector<cplx> psi = {0.5, 0.5, 0.5, -0.5};
    auto want = brute_hadamard(psi);
    EXPECT_LT(oracle::max_diff(compiled_distribution(prog), want), 1e-10);
    auto state = apply_circuit(StateVector(2), prog.state_circuit());
    for (size_t i = 0; i < 4; i++) EXPECT_LT(std::abs(prog.global_phase * state.amplitudes()[i] - psi[i]), 1e-12);
}

TEST(Compile, DistributionsMatchReferenceUpToThreeByThree) {
    Rng rng = make_rng(2, "t", 0);
    for (size_t n = 1; n <= 3; n++) {
        for (size_t m = 1; m <= 3; m++) {
            LatticeSpec L(n, m);
            for (int rep = 0; rep < 20; rep++) {
                auto beta = AngleGrid::random(L.num_sites(), rng);
                auto prog = compile(L, beta);
                EXPECT_LT(oracle::max_diff(compiled_distribution(prog), reference(L, beta)), 1e-10);
                auto report = verify_equivalence(prog, L, beta);
                EXPECT_TRUE(report.passed) << n << "x" << m << ": " << report.message;
                EXPECT_LT(report.state_deviation, 1e-10);
                EXPECT_LT(std::abs(report.recovered_phase - report.recorded_phase), 1e-10);
            }
        }
    }
}

TEST(Compile, CorruptedPulseIsReported) {
    LatticeSpec L(2, 2);
    Rng rng = make_rng(3, "t", 0);
    auto beta = AngleGrid::random(4, rng);
    auto prog = compile(L, beta);
    for (auto &g : prog.circuit.gates) {
        if (g.kind == GateKind::RXY && g.q0 == 2) {
            g.phi += 0.3;
            break;
        }
    }
    auto report = verify_equivalence(prog, L, beta);
    EXPECT_FALSE(report.passed);
    ASSERT_TRUE(report.first_offending_index.has_value());
    EXPECT_LT(*report.first_offending_index, 16u);
    EXPECT_GT(report.state_deviation, 1e-3);
    EXPECT_FALSE(report.message.empty());
}

TEST(Compile, SingleSiteHasNoEntanglers) {
    LatticeSpec L(1, 1);
    AngleGrid beta({3});
    auto prog = compile(L, beta);
    EXPECT_EQ(prog.circuit.count(GateKind::MS), 0u);
    EXPECT_TRUE(verify_equivalence(prog, L, beta).passed);
}

TEST(NativeIdentities, ResidualsAreTiny) {
    auto r = native_identity_residuals();
    EXPECT_LT(r.cz_from_ms, 1e-12);
    EXPECT_LT(r.z_from_xy, 1e-12);
    EXPECT_LT(r.phase_shift_pi, 1e-12);
    EXPECT_LT(r.hadamard_from_xy, 1e-12);
    EXPECT_LT(r.ms_commute, 1e-12);
}

TEST(NativeIdentities, MsLayerOrderDoesNotMatter) {
    LatticeSpec L(3, 3);
    Rng rng = make_rng(4, "t", 0);
    auto prog = compile(L, AngleGrid::random(9, rng));
    Circuit reversed = prog.circuit;
    auto first = std::find_if(reversed.gates.begin(), reversed.gates.end(), [](const Gate &g) { return g.kind == GateKind::MS; });
    auto last = std::find_if(reversed.gates.rbegin(), reversed.gates.rend(), [](const Gate &g) { return g.kind == GateKind::MS; }).base();
    std::reverse(first, last);
    ASSERT_NE(reversed, prog.circuit);
    auto a = apply_circuit(StateVector(9), prog.circuit);
    auto b = apply_circuit(StateVector(9), reversed);
    EXPECT_LT(oracle::max_diff(a.amplitudes(), b.amplitudes()), 1e-12);
}

TEST(CompiledJson, RoundTripAndRejection) {
    LatticeSpec L(2, 2);
    Rng rng = make_rng(5, "t", 0);
    auto prog = compile(L, AngleGrid::random(4, rng));
    auto j = compiled_to_json(prog);
    EXPECT_EQ(j.at("post_flip_mask").get<std::string>(), "1111");
    ASSERT_EQ(j.at("global_phase").size(), 2u);
    EXPECT_EQ(compiled_from_json(j), prog);
    Circuit c(2);
    c.h(0);
    auto withh = circuit_to_json(c);
    withh["post_flip_mask"] = "11";
    withh["global_phase"] = {1.0, 0.0};
    EXPECT_THROW(compiled_from_json(withh), std::invalid_argument);
}

TEST(CompiledPreparation, NoiselessModesReproduceIdealDistribution) {
    LatticeSpec L(2, 2);
    Rng rng = make_rng(6, "t", 0);
    auto beta = AngleGrid::random(4, rng);
    auto prep = compiled_preparation_factory(L, NoiseSpec::none(), CompiledMode::Density)(beta);
    auto *mixed = dynamic_cast<const MixedPreparation *>(prep.get());
    ASSERT_NE(mixed, nullptr);
    EXPECT_LT(oracle::max_diff(mixed->rho().hadamard_basis_distribution(), reference(L, beta)), 1e-12);
    auto traj = compiled_preparation_factory(L, NoiseSpec::none(), CompiledMode::Trajectory)(beta);
    std::vector<uint64_t> s;
    Rng srng = make_rng(7, "t", 0);
    traj->sample_hadamard(20000, srng, s);
    std::vector<double> hist(16);
    for (auto x : s) hist[x] += 1.0 / 20000;
    auto want = reference(L, beta);
    for (size_t x = 0; x < 16; x++) EXPECT_NEAR(hist[x], want[x], 5 * std::sqrt(want[x] / 20000) + 1e-12);
}
