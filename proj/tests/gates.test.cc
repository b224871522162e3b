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

#include "mbqc/gates.h"
#include "oracle.h"

using namespace mbqc;
namespace gm = mbqc::gate_matrix;
using oracle::Dense;
using oracle::cplx;

namespace {

constexpr double kPi = std::numbers::pi;

Dense from_mat4(const Mat4 &m) {
    Dense d(4);
    for (int r = 0; r < 4; r++)
        for (int c = 0; c < 4; c++) d(r, c) = m(r, c);
    return d;
}

double unitarity_error(const Mat2 &u) {
    return (u * u.adjoint()).max_diff(gm::identity());
}

}  // namespace

TEST(Gates, SingleQubitGatesAreUnitary) {
    for (double t : {-2.0, -0.3, 0.0, 0.7, kPi, 5.0}) {
        EXPECT_LT(unitarity_error(gm::rz(t)), 1e-14);
        for (double p : {0.0, 0.4, kPi / 2, -1.3}) {
            EXPECT_LT(unitarity_error(gm::rxy(t, p)), 1e-14);
        }
    }
    EXPECT_LT(unitarity_error(gm::hadamard()), 1e-15);
}

TEST(Gates, RotationsMatchMatrixExponentials) {
    for (double t : {-1.1, 0.25, kPi / 2, 2.9}) {
        Dense z = oracle::expm(oracle::pauli('Z') * cplx(0, -t / 2));
        EXPECT_LT(oracle::from_mat2(gm::rz(t)).max_diff(z), 1e-13);
        for (double p : {0.0, kPi / 4, kPi / 2, 3.0, -kPi / 2}) {
            Dense gen = oracle::pauli('X') * cplx(std::cos(p)) + oracle::pauli('Y') * cplx(std::sin(p));
            Dense r = oracle::expm(gen * cplx(0, -t / 2));
            EXPECT_LT(oracle::from_mat2(gm::rxy(t, p)).max_diff(r), 1e-13) << t << " " << p;
        }
    }
    EXPECT_LT(gm::rx(0.3).max_diff(gm::rxy(0.3, 0)), 1e-15);
    EXPECT_LT(gm::ry(0.3).max_diff(gm::rxy(0.3, kPi / 2)), 1e-15);
}

TEST(Gates, RotatedXIsAHermitianInvolution) {
    for (int k = 0; k < 8; k++) {
        Mat2 x = gm::rotated_x(k * kPi / 4);
        EXPECT_LT((x * x).max_diff(gm::identity()), 1e-15);
        EXPECT_LT(x.max_diff(x.adjoint()), 1e-15);
        Mat2 expected = gm::pauli_x() * std::cos(k * kPi / 4) + gm::pauli_y() * std::sin(k * kPi / 4);
        EXPECT_LT(x.max_diff(expected), 1e-15);
    }
}

TEST(Gates, MolmerSorensenIsExpOfXX) {
    Dense xx = oracle::kron_low(oracle::pauli('X'), oracle::pauli('X'));
    Dense ms = oracle::expm(xx * cplx(0, -kPi / 4));
    EXPECT_LT(from_mat4(gm::ms()).max_diff(ms), 1e-13);
}

TEST(Gates, KronPutsFirstFactorOnLowBit) {
    Mat4 k = kron(gm::pauli_x(), gm::identity());
    // X on qubit 0 maps |00> (index 0) to |01> (index 1).
    EXPECT_EQ(k(1, 0), cplx(1));
    EXPECT_EQ(k(2, 0), cplx(0));
    EXPECT_LT(from_mat4(kron(gm::hadamard(), gm::pauli_z()))
                  .max_diff(oracle::kron_low(oracle::from_mat2(gm::hadamard()), oracle::pauli('Z'))),
              1e-15);
}

TEST(Gates, ControlledZIsDiagonal) {
    EXPECT_LT(from_mat4(gm::cz()).max_diff(oracle::cz_dense()), 0.0 + 1e-300);
}
