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

#ifndef MBQC_GATES_H
#define MBQC_GATES_H

#include <array>
#include <complex>

namespace mbqc {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix.
struct Mat2 {
    std::array<cplx, 4> m{};

    cplx &operator()(int r, int c) {
        return m[2 * r + c];
    }
    const cplx &operator()(int r, int c) const {
        return m[2 * r + c];
    }
    Mat2 operator*(const Mat2 &other) const;
    Mat2 operator*(cplx s) const;
    Mat2 operator+(const Mat2 &other) const;
    Mat2 adjoint() const;
    Mat2 conj() const;
    /// Largest entrywise absolute difference.
    double max_diff(const Mat2 &other) const;
};

/// Row-major 4x4 complex matrix. Index bit 0 is the first qubit.
struct Mat4 {
    std::array<cplx, 16> m{};

    cplx &operator()(int r, int c) {
        return m[4 * r + c];
    }
    const cplx &operator()(int r, int c) const {
        return m[4 * r + c];
    }
    Mat4 operator*(const Mat4 &other) const;
    Mat4 operator*(cplx s) const;
    double max_diff(const Mat4 &other) const;
};

/// a acts on the first qubit (index bit 0), b on the second.
Mat4 kron(const Mat2 &a, const Mat2 &b);

namespace gate_matrix {

Mat2 identity();
Mat2 hadamard();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

/// Z(theta) = exp(-i theta Z / 2) = diag(e^{-i theta/2}, e^{i theta/2}).
Mat2 rz(double theta);

/// R(theta, phi) = exp(-i theta/2 (cos(phi) X + sin(phi) Y))
///              = [[cos(theta/2), -i e^{-i phi} sin(theta/2)], [-i e^{i phi} sin(theta/2), cos(theta/2)]].
Mat2 rxy(double theta, double phi);

/// X(theta) = R(theta, 0).
Mat2 rx(double theta);

/// Y(theta) = R(theta, pi/2).
Mat2 ry(double theta);

/// Rotated X involution cos(beta) X + sin(beta) Y = [[0, e^{-i beta}], [e^{i beta}, 0]].
Mat2 rotated_x(double beta);

Mat4 cz();

/// MS = exp(-i pi/4 X (x) X) = (I - i XX) / sqrt(2).
Mat4 ms();

}  // namespace gate_matrix

}  // namespace mbqc

#endif
